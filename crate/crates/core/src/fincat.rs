//! Finite categories given by an explicit composition table.
//!
//! A [`FinCat`] is built from a [`CategoryDescription`] (names only), checked
//! against the category axioms and then frozen: all hom-sets, monomorphism
//! flags and chosen pullbacks are computed once at construction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Caps, Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// One entry `g ∘ f = gf` of a composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub g: String,
    pub f: String,
    pub gf: String,
}

/// Name-level description of a finite category.
///
/// Identities are implicit: every object `X` gets an identity named `id_X`
/// (or the name given in `identities`). Listing it among the morphisms is
/// allowed. Composites with an identity are filled in when no entry is given
/// for them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDescription {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default)]
    pub composition: Vec<CompositeSpec>,
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `g ∘ f` is composable but has no entry.
    MissingComposite {
        g: String,
        f: String,
    },
    /// An entry was given for a pair with `cod f != dom g`.
    NotComposable {
        g: String,
        f: String,
    },
    /// The stated composite has the wrong domain or codomain.
    CompositeType {
        g: String,
        f: String,
        gf: String,
    },
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
    IdentityLaw {
        g: String,
        f: String,
        expected: String,
        got: String,
    },
    Associativity {
        h: String,
        g: String,
        f: String,
        left: String,
        right: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s), first: {:?}", self.violations.len(), self.violations[0])
    }
}

/// A chosen pullback of the cospan `f: A -> C <- B: g`.
///
/// `leg_f` is `f⁻¹(g): P -> A` and `leg_g` is `g⁻¹(f): P -> B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PullbackSquare {
    pub f: Mor,
    pub g: Mor,
    pub apex: Obj,
    pub leg_f: Mor,
    pub leg_g: Mor,
}

#[derive(Clone, Debug, Default)]
struct LimitTable {
    pullbacks: Vec<Option<PullbackSquare>>,
    terminal: Option<Obj>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub right_ore: bool,
    pub finitely_complete: bool,
    pub pullback_completion: bool,
    /// Present when a class of arrows was supplied.
    pub m_pullback_completion: Option<bool>,
}

#[derive(Clone, Debug)]
struct Raw {
    objects: Vec<String>,
    names: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identity: Vec<usize>,
    table: Vec<Option<usize>>,
    report: ValidationReport,
}

fn resolve(desc: &CategoryDescription) -> Result<Raw> {
    let mut obj_idx = HashMap::new();
    for (i, o) in desc.objects.iter().enumerate() {
        if obj_idx.insert(o.clone(), i).is_some() {
            return Err(Error::DuplicateName(o.clone()));
        }
    }
    let n_obj = desc.objects.len();
    for o in desc.identities.keys() {
        if !obj_idx.contains_key(o) {
            return Err(Error::UnknownObject(o.clone()));
        }
    }
    let mut names: Vec<String> =
        desc.objects.iter().map(|o| desc.identities.get(o).cloned().unwrap_or_else(|| identity_name(o))).collect();
    let mut dom: Vec<usize> = (0..n_obj).collect();
    let mut cod: Vec<usize> = (0..n_obj).collect();
    let mut mor_idx: HashMap<String, usize> = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if mor_idx.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    let lookup_obj = |name: &str| obj_idx.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()));
    for m in &desc.morphisms {
        let d = lookup_obj(&m.dom)?;
        let c = lookup_obj(&m.cod)?;
        if let Some(&i) = mor_idx.get(&m.name) {
            if i < n_obj && d == i && c == i {
                // explicit listing of an implicit identity
                continue;
            }
            return Err(Error::DuplicateName(m.name.clone()));
        }
        mor_idx.insert(m.name.clone(), names.len());
        names.push(m.name.clone());
        dom.push(d);
        cod.push(c);
    }
    let n = names.len();
    let lookup_mor = |name: &str| mor_idx.get(name).copied().ok_or_else(|| Error::UnknownMorphism(name.to_string()));
    let mut report = ValidationReport::default();
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for e in &desc.composition {
        let g = lookup_mor(&e.g)?;
        let f = lookup_mor(&e.f)?;
        let gf = lookup_mor(&e.gf)?;
        if cod[f] != dom[g] {
            report.violations.push(Violation::NotComposable { g: e.g.clone(), f: e.f.clone() });
            continue;
        }
        if dom[gf] != dom[f] || cod[gf] != cod[g] {
            report.violations.push(Violation::CompositeType { g: e.g.clone(), f: e.f.clone(), gf: e.gf.clone() });
            continue;
        }
        match table[g * n + f] {
            Some(prev) if prev != gf => report.violations.push(Violation::ConflictingComposite {
                g: e.g.clone(),
                f: e.f.clone(),
                first: names[prev].clone(),
                second: e.gf.clone(),
            }),
            _ => table[g * n + f] = Some(gf),
        }
    }
    let identity: Vec<usize> = (0..n_obj).collect();
    for f in 0..n {
        let left = identity[cod[f]];
        table[left * n + f].get_or_insert(f);
        let right = identity[dom[f]];
        table[f * n + right].get_or_insert(f);
    }
    Ok(Raw { objects: desc.objects.clone(), names, dom, cod, identity, table, report })
}

fn check_axioms(raw: &mut Raw) {
    let n = raw.names.len();
    let composable = |g: usize, f: usize| raw.cod[f] == raw.dom[g];
    let mut violations = Vec::new();
    for g in 0..n {
        for f in 0..n {
            if composable(g, f) && raw.table[g * n + f].is_none() {
                violations.push(Violation::MissingComposite { g: raw.names[g].clone(), f: raw.names[f].clone() });
            }
        }
    }
    for f in 0..n {
        let idd = raw.identity[raw.dom[f]];
        let idc = raw.identity[raw.cod[f]];
        for (g, h) in [(f, idd), (idc, f)] {
            if let Some(got) = raw.table[g * n + h] {
                if got != f {
                    violations.push(Violation::IdentityLaw {
                        g: raw.names[g].clone(),
                        f: raw.names[h].clone(),
                        expected: raw.names[f].clone(),
                        got: raw.names[got].clone(),
                    });
                }
            }
        }
    }
    for h in 0..n {
        for g in 0..n {
            if !composable(h, g) {
                continue;
            }
            for f in 0..n {
                if !composable(g, f) {
                    continue;
                }
                let (Some(hg), Some(gf)) = (raw.table[h * n + g], raw.table[g * n + f]) else {
                    continue;
                };
                let (Some(left), Some(right)) = (raw.table[h * n + gf], raw.table[hg * n + f]) else {
                    continue;
                };
                if left != right {
                    violations.push(Violation::Associativity {
                        h: raw.names[h].clone(),
                        g: raw.names[g].clone(),
                        f: raw.names[f].clone(),
                        left: raw.names[left].clone(),
                        right: raw.names[right].clone(),
                    });
                }
            }
        }
    }
    raw.report.violations.extend(violations);
}

/// Checks a description against the category axioms.
///
/// Dangling names are structural errors; axiom failures are collected in the
/// returned report.
pub fn validate_category(desc: &CategoryDescription) -> Result<ValidationReport> {
    let mut raw = resolve(desc)?;
    check_axioms(&mut raw);
    Ok(raw.report)
}

/// A validated finite category with its chosen finite limits.
#[derive(Clone, Debug)]
pub struct FinCat {
    objects: Vec<String>,
    names: Vec<String>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    identity: Vec<Mor>,
    table: Vec<Option<Mor>>,
    into: Vec<Vec<Mor>>,
    out_of: Vec<Vec<Mor>>,
    hom: Vec<Vec<Mor>>,
    mono: Vec<bool>,
    limits: LimitTable,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.names == other.names
            && self.dom == other.dom
            && self.cod == other.cod
            && self.table == other.table
    }
}

impl FinCat {
    pub fn new(desc: &CategoryDescription) -> Result<Self> {
        Self::with_caps(desc, &Caps::default())
    }

    pub fn with_caps(desc: &CategoryDescription, caps: &Caps) -> Result<Self> {
        let mut raw = resolve(desc)?;
        Caps::check("max_morphisms", raw.names.len(), caps.max_morphisms)?;
        check_axioms(&mut raw);
        if !raw.report.is_valid() {
            return Err(Error::InvalidCategory(raw.report));
        }
        let n_obj = raw.objects.len();
        let n = raw.names.len();
        let dom: Vec<Obj> = raw.dom.iter().map(|&o| Obj(o)).collect();
        let cod: Vec<Obj> = raw.cod.iter().map(|&o| Obj(o)).collect();
        let mut into = vec![Vec::new(); n_obj];
        let mut out_of = vec![Vec::new(); n_obj];
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for m in 0..n {
            into[cod[m].0].push(Mor(m));
            out_of[dom[m].0].push(Mor(m));
            hom[dom[m].0 * n_obj + cod[m].0].push(Mor(m));
        }
        let mut cat = FinCat {
            obj_index: raw.objects.iter().enumerate().map(|(i, o)| (o.clone(), Obj(i))).collect(),
            mor_index: raw.names.iter().enumerate().map(|(i, m)| (m.clone(), Mor(i))).collect(),
            objects: raw.objects,
            names: raw.names,
            dom,
            cod,
            identity: raw.identity.into_iter().map(Mor).collect(),
            table: raw.table.into_iter().map(|o| o.map(Mor)).collect(),
            into,
            out_of,
            hom,
            mono: Vec::new(),
            limits: LimitTable::default(),
        };
        cat.mono = (0..n).map(|m| cat.compute_mono(Mor(m))).collect();
        cat.limits = cat.build_limits();
        Ok(cat)
    }

    /// Name-level description that rebuilds this category exactly.
    pub fn description(&self) -> CategoryDescription {
        let mut composition = Vec::new();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if self.is_identity(g) || self.is_identity(f) {
                    continue;
                }
                if let Some(gf) = self.try_compose(g, f) {
                    composition.push(CompositeSpec {
                        g: self.mor_name(g).to_string(),
                        f: self.mor_name(f).to_string(),
                        gf: self.mor_name(gf).to_string(),
                    });
                }
            }
        }
        let identities = self
            .objects()
            .filter(|&o| self.mor_name(self.id(o)) != identity_name(self.obj_name(o)))
            .map(|o| (self.obj_name(o).to_string(), self.mor_name(self.id(o)).to_string()))
            .collect();
        CategoryDescription {
            objects: self.objects.clone(),
            identities,
            morphisms: self
                .morphisms()
                .filter(|&m| !self.is_identity(m))
                .map(|m| MorphismSpec {
                    name: self.mor_name(m).to_string(),
                    dom: self.obj_name(self.dom(m)).to_string(),
                    cod: self.obj_name(self.cod(m)).to_string(),
                })
                .collect(),
            composition,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + Clone {
        (0..self.names.len()).map(Mor)
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.names[m.0]
    }

    pub fn object(&self, name: &str) -> Result<Obj> {
        self.obj_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<Mor> {
        self.mor_index.get(name).copied().ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn dom(&self, m: Mor) -> Obj {
        self.dom[m.0]
    }

    pub fn cod(&self, m: Mor) -> Obj {
        self.cod[m.0]
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.dom(m).0] == m
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.cod(f) != self.dom(g) {
            return None;
        }
        self.table[g.0 * self.names.len() + f.0]
    }

    /// `g ∘ f`. Panics when `cod f != dom g`.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("{} ∘ {} is not composable", self.mor_name(g), self.mor_name(f)))
    }

    /// Morphisms with codomain `o`, in index order.
    pub fn arrows_into(&self, o: Obj) -> &[Mor] {
        &self.into[o.0]
    }

    pub fn out_of(&self, o: Obj) -> &[Mor] {
        &self.out_of[o.0]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.hom[a.0 * self.objects.len() + b.0]
    }

    /// Bitset over the global morphism index with all arrows into `o`.
    pub fn into_bits(&self, o: Obj) -> Bits {
        Bits::from_indices(self.num_morphisms(), self.arrows_into(o).iter().map(|m| m.0))
    }

    fn compute_mono(&self, f: Mor) -> bool {
        let a = self.dom(f);
        for x in self.objects() {
            let hs = self.hom(x, a);
            for (i, &g) in hs.iter().enumerate() {
                for &h in &hs[i + 1..] {
                    if self.compose(f, g) == self.compose(f, h) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_mono(&self, f: Mor) -> bool {
        self.mono[f.0]
    }

    pub fn monos(&self) -> Bits {
        Bits::from_indices(self.num_morphisms(), self.morphisms().filter(|&m| self.is_mono(m)).map(|m| m.0))
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.hom(self.cod(f), self.dom(f))
            .iter()
            .any(|&g| self.compose(g, f) == self.id(self.dom(f)) && self.compose(f, g) == self.id(self.cod(f)))
    }

    /// Some `k` with `n ∘ k = m`, i.e. `m ≤ n` in the slice over the common codomain.
    pub fn factor_through(&self, m: Mor, n: Mor) -> Option<Mor> {
        if self.cod(m) != self.cod(n) {
            return None;
        }
        self.hom(self.dom(m), self.dom(n)).iter().copied().find(|&k| self.compose(n, k) == m)
    }

    /// Whether `m` and `n` are isomorphic objects of the slice over their codomain.
    pub fn slice_isomorphic(&self, m: Mor, n: Mor) -> bool {
        if self.cod(m) != self.cod(n) {
            return false;
        }
        m == n || self.hom(self.dom(m), self.dom(n)).iter().any(|&t| self.is_iso(t) && self.compose(n, t) == m)
    }

    fn cones(&self, f: Mor, g: Mor) -> Vec<(Obj, Mor, Mor)> {
        let (a, b) = (self.dom(f), self.dom(g));
        let mut out = Vec::new();
        for x in self.objects() {
            for &p in self.hom(x, a) {
                for &q in self.hom(x, b) {
                    if self.compose(f, p) == self.compose(g, q) {
                        out.push((x, p, q));
                    }
                }
            }
        }
        out
    }

    fn universal_against(&self, cones: &[(Obj, Mor, Mor)], apex: Obj, p: Mor, q: Mor) -> bool {
        cones.iter().all(|&(x, p2, q2)| {
            self.hom(x, apex).iter().filter(|&&u| self.compose(p, u) == p2 && self.compose(q, u) == q2).count() == 1
        })
    }

    /// Exhaustive check that `(p, q)` is a pullback of the cospan `(f, g)`.
    pub fn is_pullback_cone(&self, f: Mor, g: Mor, p: Mor, q: Mor) -> bool {
        if self.cod(f) != self.cod(g)
            || self.dom(p) != self.dom(q)
            || self.cod(p) != self.dom(f)
            || self.cod(q) != self.dom(g)
            || self.compose(f, p) != self.compose(g, q)
        {
            return false;
        }
        let cones = self.cones(f, g);
        self.universal_against(&cones, self.dom(p), p, q)
    }

    fn search_pullback(&self, f: Mor, g: Mor) -> Option<PullbackSquare> {
        if self.is_identity(f) {
            return Some(PullbackSquare { f, g, apex: self.dom(g), leg_f: g, leg_g: self.id(self.dom(g)) });
        }
        if self.is_identity(g) {
            return Some(PullbackSquare { f, g, apex: self.dom(f), leg_f: self.id(self.dom(f)), leg_g: f });
        }
        let cones = self.cones(f, g);
        cones
            .iter()
            .find(|&&(x, p, q)| self.universal_against(&cones, x, p, q))
            .map(|&(apex, leg_f, leg_g)| PullbackSquare { f, g, apex, leg_f, leg_g })
    }

    fn build_limits(&self) -> LimitTable {
        let n = self.num_morphisms();
        let mut pullbacks = vec![None; n * n];
        for f in self.morphisms() {
            for &g in self.arrows_into(self.cod(f)) {
                pullbacks[f.0 * n + g.0] = self.search_pullback(f, g);
            }
        }
        let terminal = self.objects().find(|&t| self.objects().all(|x| self.hom(x, t).len() == 1));
        LimitTable { pullbacks, terminal }
    }

    /// The chosen pullback of `f` and `g` (which must share a codomain).
    pub fn pullback(&self, f: Mor, g: Mor) -> Option<&PullbackSquare> {
        if self.cod(f) != self.cod(g) {
            return None;
        }
        self.limits.pullbacks[f.0 * self.num_morphisms() + g.0].as_ref()
    }

    pub fn try_pullback(&self, f: Mor, g: Mor) -> Result<&PullbackSquare> {
        self.pullback(f, g)
            .ok_or_else(|| Error::MissingPullback { f: self.mor_name(f).to_string(), g: self.mor_name(g).to_string() })
    }

    /// `g⁻¹(m)`: the pullback of `m` along `g`, an arrow into `dom g`.
    pub fn pullback_along(&self, g: Mor, m: Mor) -> Option<Mor> {
        self.pullback(g, m).map(|sq| sq.leg_f)
    }

    /// Product of `f` and `h` in the slice over their common codomain: the
    /// diagonal `f ∘ f⁻¹(h)` of the chosen pullback square.
    pub fn slice_product(&self, f: Mor, h: Mor) -> Option<Mor> {
        self.pullback(f, h).map(|sq| self.compose(f, sq.leg_f))
    }

    pub fn terminal(&self) -> Option<Obj> {
        self.limits.terminal
    }

    pub fn is_right_ore(&self) -> bool {
        self.objects().all(|c| {
            let into = self.arrows_into(c);
            into.iter().all(|&f| into.iter().all(|&g| !self.cones(f, g).is_empty()))
        })
    }

    pub fn is_finitely_complete(&self) -> bool {
        self.terminal().is_some()
            && self.morphisms().all(|f| self.arrows_into(self.cod(f)).iter().all(|&g| self.pullback(f, g).is_some()))
    }

    /// Whether every composable `s: D -> E`, `t: E -> F` sits as the left and
    /// bottom sides of some pullback square, with the remaining vertical side
    /// drawn from `right_class` when given.
    fn completes(&self, s: Mor, t: Mor, right_class: Option<&Bits>) -> bool {
        let d = self.dom(s);
        let ts = self.compose(t, s);
        let target = self.cod(t);
        self.arrows_into(target).iter().any(|&k| {
            if right_class.is_some_and(|cls| !cls.contains(k.0)) {
                return false;
            }
            self.hom(d, self.dom(k)).iter().any(|&u| self.compose(k, u) == ts && self.is_pullback_cone(t, k, s, u))
        })
    }

    pub fn has_pullback_completion(&self) -> bool {
        self.morphisms().all(|s| self.out_of(self.cod(s)).iter().all(|&t| self.completes(s, t, None)))
    }

    /// Pullback completion with `s` and the opposite vertical side in `class`.
    pub fn has_class_pullback_completion(&self, class: &Bits) -> bool {
        self.morphisms()
            .filter(|s| class.contains(s.0))
            .all(|s| self.out_of(self.cod(s)).iter().all(|&t| self.completes(s, t, Some(class))))
    }

    pub fn structural_predicates(&self, class: Option<&Bits>) -> StructuralPredicates {
        StructuralPredicates {
            right_ore: self.is_right_ore(),
            finitely_complete: self.is_finitely_complete(),
            pullback_completion: self.has_pullback_completion(),
            m_pullback_completion: class.map(|c| self.has_class_pullback_completion(c)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_are_valid() {
        for (name, desc) in fixtures::descriptions() {
            let report = validate_category(&desc).unwrap();
            assert!(report.is_valid(), "{name}: {report}");
        }
    }

    #[test]
    fn identity_law_violation_is_reported() {
        let mut desc = fixtures::gamma_description();
        desc.composition.push(CompositeSpec { g: "s".into(), f: "id_N".into(), gf: "t".into() });
        let report = validate_category(&desc).unwrap();
        assert!(report.violations.iter().any(|v| matches!(v,
            Violation::IdentityLaw { g, f, .. } if g == "s" && f == "id_N")));
        assert!(matches!(FinCat::new(&desc), Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn dangling_reference_is_structural_error() {
        let mut desc = fixtures::gamma_description();
        desc.morphisms.push(MorphismSpec { name: "u".into(), dom: "N".into(), cod: "Q".into() });
        assert!(matches!(validate_category(&desc), Err(Error::UnknownObject(o)) if o == "Q"));
    }

    #[test]
    fn missing_composite_and_associativity() {
        // Two endomorphisms a, b on one object with a∘b missing.
        let desc = CategoryDescription {
            objects: vec!["*".into()],
            morphisms: vec![MorphismSpec { name: "a".into(), dom: "*".into(), cod: "*".into() }],
            ..Default::default()
        };
        let report = validate_category(&desc).unwrap();
        assert_eq!(report.violations, vec![Violation::MissingComposite { g: "a".into(), f: "a".into() }]);
    }

    #[test]
    fn morphism_cap() {
        let caps = Caps { max_morphisms: 3, ..Caps::default() };
        let err = FinCat::with_caps(&fixtures::gamma_description(), &caps).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { count: 4, .. }));
    }

    #[test]
    fn monomorphisms() {
        let l3 = fixtures::l3();
        assert!(l3.morphisms().all(|m| l3.is_mono(m)));
        let mon = fixtures::mon_e();
        let e = mon.morphism("e").unwrap();
        assert!(!mon.is_mono(e));
        assert!(mon.is_mono(mon.morphism("1").unwrap()));
        let gamma = fixtures::gamma();
        assert!(gamma.morphisms().all(|m| gamma.is_mono(m)));
    }

    #[test]
    fn pullbacks_on_fixtures() {
        let l3 = fixtures::l3();
        let m = |n: &str| l3.morphism(n).unwrap();
        let sq = l3.pullback(m("y<=1"), m("x<=1")).unwrap();
        assert_eq!(l3.obj_name(sq.apex), "x");
        assert_eq!(sq.leg_f, m("x<=y"));
        assert_eq!(sq.leg_g, m("id_x"));
        // along an identity
        let sq = l3.pullback(m("id_1"), m("y<=1")).unwrap();
        assert_eq!((sq.leg_f, sq.leg_g), (m("y<=1"), m("id_y")));

        let gamma = fixtures::gamma();
        let s = gamma.morphism("s").unwrap();
        let t = gamma.morphism("t").unwrap();
        assert!(gamma.pullback(s, t).is_none());
        // the only cone over (s, s) is the identity one
        assert!(gamma.pullback(s, s).is_some());
    }

    #[test]
    fn slice_products() {
        let l3 = fixtures::l3();
        let m = |n: &str| l3.morphism(n).unwrap();
        assert_eq!(l3.slice_product(m("y<=1"), m("x<=1")), Some(m("x<=1")));
        for f in l3.morphisms() {
            assert_eq!(l3.slice_product(f, l3.id(l3.cod(f))), Some(f));
        }
        let d = fixtures::diamond();
        let m = |n: &str| d.morphism(n).unwrap();
        assert_eq!(d.slice_product(m("a<=1"), m("b<=1")), Some(m("0<=1")));
    }

    #[test]
    fn predicates() {
        let l3 = fixtures::l3();
        let all = Bits::full(l3.num_morphisms());
        assert_eq!(
            l3.structural_predicates(Some(&all)),
            StructuralPredicates {
                right_ore: true,
                finitely_complete: true,
                pullback_completion: true,
                m_pullback_completion: Some(true),
            }
        );
        let one = fixtures::terminal();
        let all = Bits::full(one.num_morphisms());
        let p = one.structural_predicates(Some(&all));
        assert!(p.right_ore && p.finitely_complete && p.pullback_completion);
        assert_eq!(p.m_pullback_completion, Some(true));
        let gamma = fixtures::gamma();
        assert!(!gamma.is_finitely_complete());
        assert!(gamma.terminal().is_none());
        assert!(!gamma.is_right_ore());
        let mon = fixtures::mon_e();
        assert!(mon.is_right_ore());
        assert!(!mon.is_finitely_complete());
    }

    #[test]
    fn description_round_trip() {
        for (_, desc) in fixtures::descriptions() {
            let cat = FinCat::new(&desc).unwrap();
            let again = FinCat::new(&cat.description()).unwrap();
            assert_eq!(cat, again);
        }
    }
}
