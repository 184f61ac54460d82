//! JSON workspaces: a category plus named ideals, classes, families and
//! presheaves.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::TranslationFamily;
use crate::admissible::AdmissibleClass;
use crate::error::{Caps, Error, Result};
use crate::fincat::{CategoryDescription, CompositeSpec, FinCat, Mor, MorphismSpec};
use crate::fixtures;
use crate::ideals::Ideal;
use crate::omega::Omega;
use crate::presheaf::Presheaf;

/// Template expanded into a category description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// Poset from a covering relation; `elements` fixes the object order.
    Poset {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        elements: Vec<String>,
        #[serde(default)]
        le: Vec<(String, String)>,
    },
    /// One-object category; `table` rows are `[a, b, a·b]`.
    Monoid {
        elements: Vec<String>,
        unit: String,
        table: Vec<[String; 3]>,
    },
    Gamma,
    Terminal,
}

impl Generator {
    pub fn expand(&self) -> Result<CategoryDescription> {
        match self {
            Generator::Poset { elements, le } => fixtures::poset(elements, le),
            Generator::Monoid { elements, unit, table } => fixtures::monoid(elements, unit, table),
            Generator::Gamma => Ok(fixtures::gamma_description()),
            Generator::Terminal => Ok(fixtures::terminal_description()),
        }
    }
}

/// A presheaf by element labels; `restrict[h]` sends labels over `cod h` to
/// labels over `dom h`. Identities are implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafSpec {
    pub elements: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub restrict: BTreeMap<String, BTreeMap<String, String>>,
}

/// The on-disk format.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composition: Vec<CompositeSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub admissible_classes: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaves: BTreeMap<String, PresheafSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
    /// Commands run when none is given on the command line.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub requests: Vec<String>,
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("workspace serializes")
    }

    fn description(&self) -> Result<CategoryDescription> {
        let explicit = !self.objects.is_empty()
            || !self.morphisms.is_empty()
            || !self.composition.is_empty()
            || !self.identities.is_empty();
        match (&self.generator, explicit) {
            (Some(_), true) => Err(Error::Malformed("give either a generator or objects, not both".into())),
            (Some(g), false) => g.expand(),
            (None, _) if self.objects.is_empty() => Err(Error::Malformed("no category given".into())),
            (None, _) => Ok(CategoryDescription {
                objects: self.objects.clone(),
                identities: self.identities.clone(),
                morphisms: self.morphisms.clone(),
                composition: self.composition.clone(),
            }),
        }
    }
}

/// A loaded and validated workspace.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub cat: FinCat,
    pub caps: Caps,
    pub ideals: BTreeMap<String, Ideal>,
    pub classes: BTreeMap<String, AdmissibleClass>,
    pub families: BTreeMap<String, Vec<Mor>>,
    pub presheaves: BTreeMap<String, Presheaf>,
    pub requests: Vec<String>,
}

fn in_context<T>(what: &str, name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::CapExceeded { .. } => e,
        e => Error::Malformed(format!("{what} `{name}`: {e}")),
    })
}

impl Workspace {
    /// Reads a workspace; `overrides` are applied on top of the file's caps.
    pub fn load(path: &Path, overrides: &[(String, usize)]) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_file(&WorkspaceFile::parse(&text)?, overrides)
    }

    pub fn from_file(file: &WorkspaceFile, overrides: &[(String, usize)]) -> Result<Self> {
        let mut caps = file.caps.unwrap_or_default();
        for (k, v) in overrides {
            caps.set(k, *v)?;
        }
        let cat = FinCat::with_caps(&file.description()?, &caps)?;
        let omega = Omega::new(&cat, &caps)?;
        let mut ideals = BTreeMap::new();
        for (name, parts) in &file.ideals {
            ideals.insert(name.clone(), in_context("ideal", name, Ideal::from_names(&cat, parts))?);
        }
        let mut classes = BTreeMap::new();
        for (name, arrows) in &file.admissible_classes {
            let class = in_context("admissible class", name, AdmissibleClass::from_names(&cat, arrows))?;
            classes.insert(name.clone(), class);
        }
        let mut families = BTreeMap::new();
        for (name, arrows) in &file.families {
            let fam = in_context("family", name, TranslationFamily::from_names(&omega, arrows))?;
            families.insert(name.clone(), fam.arrows().to_vec());
        }
        let mut presheaves = BTreeMap::new();
        for (name, spec) in &file.presheaves {
            presheaves.insert(name.clone(), in_context("presheaf", name, build_presheaf(&cat, spec))?);
        }
        for r in &file.requests {
            in_context("request", r, crate::audit::Command::parse(r).map(|_| ()))?;
        }
        Ok(Workspace { cat, caps, ideals, classes, families, presheaves, requests: file.requests.clone() })
    }

    /// Serializes with the category written out explicitly.
    pub fn to_file(&self) -> WorkspaceFile {
        let cat = &self.cat;
        let desc = cat.description();
        WorkspaceFile {
            generator: None,
            objects: desc.objects,
            identities: desc.identities,
            morphisms: desc.morphisms,
            composition: desc.composition,
            ideals: self.ideals.iter().map(|(n, i)| (n.clone(), i.to_names(cat))).collect(),
            admissible_classes: self.classes.iter().map(|(n, c)| (n.clone(), c.names(cat))).collect(),
            families: self
                .families
                .iter()
                .map(|(n, f)| {
                    let names = cat
                        .objects()
                        .map(|c| (cat.obj_name(c).to_string(), cat.mor_name(f[c.0]).to_string()))
                        .collect();
                    (n.clone(), names)
                })
                .collect(),
            presheaves: self.presheaves.iter().map(|(n, p)| (n.clone(), presheaf_spec(cat, p))).collect(),
            caps: Some(self.caps),
            requests: self.requests.clone(),
        }
    }

    pub fn family(&self, omega: &Omega, name: &str) -> Result<TranslationFamily> {
        let arrows = self.families.get(name).ok_or_else(|| Error::UnknownName(name.into()))?;
        TranslationFamily::new(omega, arrows.clone())
    }
}

pub fn build_presheaf(cat: &FinCat, spec: &PresheafSpec) -> Result<Presheaf> {
    for o in spec.elements.keys() {
        cat.object(o)?;
    }
    let labels: Vec<Vec<String>> =
        cat.objects().map(|c| spec.elements.get(cat.obj_name(c)).cloned().unwrap_or_default()).collect();
    let index = |c: usize, l: &str| {
        labels[c]
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::InvalidPresheaf(format!("no element `{l}` over {}", cat.obj_name(crate::Obj(c)))))
    };
    for m in spec.restrict.keys() {
        cat.morphism(m)?;
    }
    let mut restrict = Vec::with_capacity(cat.num_morphisms());
    for h in cat.morphisms() {
        let (d, c) = (cat.dom(h).0, cat.cod(h).0);
        let table = match spec.restrict.get(cat.mor_name(h)) {
            Some(map) => {
                for k in map.keys() {
                    index(c, k)?;
                }
                labels[c]
                    .iter()
                    .map(|l| {
                        let t = map.get(l).ok_or_else(|| {
                            Error::InvalidPresheaf(format!("`{}` has no image of `{l}`", cat.mor_name(h)))
                        })?;
                        index(d, t)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            None if cat.is_identity(h) => (0..labels[c].len()).collect(),
            None if labels[c].is_empty() => Vec::new(),
            None => return Err(Error::InvalidPresheaf(format!("no restriction along `{}`", cat.mor_name(h)))),
        };
        restrict.push(table);
    }
    Presheaf::new(cat, labels, restrict)
}

pub fn presheaf_spec(cat: &FinCat, p: &Presheaf) -> PresheafSpec {
    let elements = cat.objects().map(|c| (cat.obj_name(c).to_string(), p.labels()[c.0].clone())).collect();
    let restrict = cat
        .morphisms()
        .filter(|&h| !cat.is_identity(h) && p.size(cat.cod(h)) > 0)
        .map(|h| {
            let c = cat.cod(h);
            let map = (0..p.size(c))
                .map(|x| (p.label(c, x).to_string(), p.label(cat.dom(h), p.restrict(h, x)).to_string()))
                .collect();
            (cat.mor_name(h).to_string(), map)
        })
        .collect();
    PresheafSpec { elements, restrict }
}

fn names<const N: usize>(xs: [&str; N]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn pairs(xs: &[(&str, &str)]) -> Vec<(String, String)> {
    xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn ideal(parts: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
    parts.iter().map(|(o, ms)| (o.to_string(), ms.iter().map(|m| m.to_string()).collect())).collect()
}

/// Workspaces for the built-in fixtures, by name.
pub fn fixture_workspaces() -> Vec<(&'static str, WorkspaceFile)> {
    let terminal = WorkspaceFile { generator: Some(Generator::Terminal), ..Default::default() };
    let gamma = WorkspaceFile {
        generator: Some(Generator::Gamma),
        ideals: BTreeMap::from([
            ("I".to_string(), ideal(&[])),
            ("I'".to_string(), ideal(&[("N", &["id_N"]), ("A", &["s", "t"])])),
        ]),
        presheaves: BTreeMap::from([(
            "loop".to_string(),
            PresheafSpec {
                elements: BTreeMap::from([("N".to_string(), names(["v"])), ("A".to_string(), names(["e"]))]),
                restrict: BTreeMap::from([
                    ("s".to_string(), BTreeMap::from([("e".to_string(), "v".to_string())])),
                    ("t".to_string(), BTreeMap::from([("e".to_string(), "v".to_string())])),
                ]),
            },
        )]),
        ..Default::default()
    };
    let l3 = WorkspaceFile {
        generator: Some(Generator::Poset { elements: names(["x", "y", "1"]), le: pairs(&[("x", "y"), ("y", "1")]) }),
        ideals: BTreeMap::from([
            ("y".to_string(), ideal(&[("x", &["id_x"]), ("y", &["id_y", "x<=y"]), ("1", &["id_1", "x<=1", "y<=1"])])),
            ("from_x".to_string(), ideal(&[("x", &["id_x"]), ("y", &["x<=y"]), ("1", &["x<=1"])])),
        ]),
        admissible_classes: BTreeMap::from([("M".to_string(), names(fixtures::L3_CLASS))]),
        families: BTreeMap::from([(
            "F".to_string(),
            fixtures::L3_FAMILY.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        )]),
        ..Default::default()
    };
    let diamond = WorkspaceFile {
        generator: Some(Generator::Poset {
            elements: names(["0", "a", "b", "1"]),
            le: pairs(&[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
        }),
        admissible_classes: BTreeMap::from([(
            "monos".to_string(),
            names(["id_0", "id_a", "id_b", "id_1", "0<=a", "0<=b", "0<=1", "a<=1", "b<=1"]),
        )]),
        ..Default::default()
    };
    let mon_e = WorkspaceFile {
        generator: Some(Generator::Monoid {
            elements: names(["1", "e"]),
            unit: "1".into(),
            table: vec![["e".into(), "e".into(), "e".into()]],
        }),
        ideals: BTreeMap::from([("E".to_string(), ideal(&[("*", &["e"])]))]),
        ..Default::default()
    };
    vec![("terminal", terminal), ("gamma", gamma), ("l3", l3), ("diamond", diamond), ("mon_e", mon_e)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let g = WorkspaceFile::parse(r#"{"generator":{"kind":"gamma"}}"#).unwrap();
        let ws = Workspace::from_file(&g, &[]).unwrap();
        assert_eq!(ws.cat.description(), fixtures::gamma().description());
        let l = WorkspaceFile::parse(r#"{"generator":{"kind":"poset","le":[["x","y"],["y","1"]]}}"#).unwrap();
        let ws = Workspace::from_file(&l, &[]).unwrap();
        assert_eq!(ws.cat.description(), fixtures::l3().description());
        let m = WorkspaceFile::parse(
            r#"{"generator":{"kind":"monoid","elements":["1","a","b"],"unit":"1","table":[["a","a","a"]]}}"#,
        )
        .unwrap();
        assert!(matches!(Workspace::from_file(&m, &[]), Err(Error::Malformed(_))));
    }

    #[test]
    fn parse_errors_have_positions() {
        match WorkspaceFile::parse("{\n  \"objects\": [\"a\",]\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(WorkspaceFile::parse(r#"{"objets":["a"]}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn fixtures_round_trip() {
        for (name, file) in fixture_workspaces() {
            let ws = Workspace::from_file(&file, &[]).unwrap();
            let out = ws.to_file();
            let again = Workspace::from_file(&WorkspaceFile::parse(&out.to_json()).unwrap(), &[]).unwrap();
            assert_eq!(again.to_file(), out, "{name}");
        }
    }

    #[test]
    fn bad_names() {
        let mut f = fixture_workspaces().remove(2).1;
        f.ideals.insert("bad".into(), ideal(&[("z", &[])]));
        assert!(matches!(Workspace::from_file(&f, &[]), Err(Error::Malformed(m)) if m.contains("bad")));
        let f = fixture_workspaces().remove(2).1;
        assert!(matches!(Workspace::from_file(&f, &[("max_morphisms".into(), 3)]), Err(Error::CapExceeded { .. })));
    }
}
