//! Category generators and the built-in fixture zoo.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fincat::{identity_name, CategoryDescription, CompositeSpec, FinCat, MorphismSpec};

/// Name of the arrow `a -> b` in a poset category.
pub fn le_name(a: &str, b: &str) -> String {
    if a == b {
        identity_name(a)
    } else {
        format!("{a}<={b}")
    }
}

/// Poset category generated by the covering relation `le`: the reflexive and
/// transitive closure is taken. Elements are ordered as listed in `elements`,
/// followed by any further names in order of first appearance in `le`.
pub fn poset(elements: &[String], le: &[(String, String)]) -> Result<CategoryDescription> {
    let mut order: Vec<String> = elements.to_vec();
    for (a, b) in le {
        for x in [a, b] {
            if !order.contains(x) {
                order.push(x.clone());
            }
        }
    }
    let n = order.len();
    let idx: HashMap<&str, usize> = order.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in le {
        rel[idx[a.as_str()]][idx[b.as_str()]] = true;
    }
    for k in 0..n {
        let via = rel[k].clone();
        for row in rel.iter_mut().filter(|row| row[k]) {
            for (x, &v) in row.iter_mut().zip(&via) {
                *x |= v;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] && rel[j][i] {
                return Err(Error::Malformed(format!(
                    "order relation is not antisymmetric: {} and {}",
                    order[i], order[j]
                )));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut composition = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] {
                morphisms.push(MorphismSpec {
                    name: le_name(&order[i], &order[j]),
                    dom: order[i].clone(),
                    cod: order[j].clone(),
                });
                for k in 0..n {
                    if k != j && rel[j][k] {
                        composition.push(CompositeSpec {
                            g: le_name(&order[j], &order[k]),
                            f: le_name(&order[i], &order[j]),
                            gf: le_name(&order[i], &order[k]),
                        });
                    }
                }
            }
        }
    }
    Ok(CategoryDescription { objects: order, identities: BTreeMap::new(), morphisms, composition })
}

/// One-object category of a monoid. `table` lists `[a, b, a·b]`, where `a·b`
/// is the composite `a ∘ b`; every product of two non-unit elements must be
/// present.
pub fn monoid(elements: &[String], unit: &str, table: &[[String; 3]]) -> Result<CategoryDescription> {
    if !elements.iter().any(|e| e == unit) {
        return Err(Error::UnknownMorphism(unit.to_string()));
    }
    let mut products: HashMap<(&str, &str), &str> = HashMap::new();
    for [a, b, ab] in table {
        for x in [a, b, ab] {
            if !elements.contains(x) {
                return Err(Error::UnknownMorphism(x.clone()));
            }
        }
        if let Some(prev) = products.insert((a, b), ab) {
            if prev != ab {
                return Err(Error::Malformed(format!("conflicting products for {a}*{b}")));
            }
        }
    }
    let mut composition = Vec::new();
    for a in elements.iter().filter(|e| *e != unit) {
        for b in elements.iter().filter(|e| *e != unit) {
            let ab = products
                .get(&(a.as_str(), b.as_str()))
                .ok_or_else(|| Error::Malformed(format!("monoid table is missing {a}*{b}")))?;
            composition.push(CompositeSpec { g: a.clone(), f: b.clone(), gf: ab.to_string() });
        }
    }
    Ok(CategoryDescription {
        objects: vec!["*".into()],
        identities: BTreeMap::from([("*".to_string(), unit.to_string())]),
        morphisms: elements
            .iter()
            .filter(|e| *e != unit)
            .map(|e| MorphismSpec { name: e.clone(), dom: "*".into(), cod: "*".into() })
            .collect(),
        composition,
    })
}

/// The terminal category.
pub fn terminal_description() -> CategoryDescription {
    CategoryDescription { objects: vec!["*".into()], ..Default::default() }
}

/// The category whose presheaves are directed graphs: `s, t: N -> A`.
pub fn gamma_description() -> CategoryDescription {
    CategoryDescription {
        objects: vec!["N".into(), "A".into()],
        identities: BTreeMap::new(),
        morphisms: ["s", "t"]
            .iter()
            .map(|n| MorphismSpec { name: n.to_string(), dom: "N".into(), cod: "A".into() })
            .collect(),
        composition: vec![],
    }
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
    items.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// The chain `x <= y <= 1`.
pub fn l3_description() -> CategoryDescription {
    poset(&strings(&["x", "y", "1"]), &pairs(&[("x", "y"), ("y", "1")])).unwrap()
}

/// The four-element lattice `{0, a, b, 1}` with `a ∧ b = 0`.
pub fn diamond_description() -> CategoryDescription {
    poset(&strings(&["0", "a", "b", "1"]), &pairs(&[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])).unwrap()
}

/// The monoid `{1, e}` with `e·e = e`.
pub fn mon_e_description() -> CategoryDescription {
    monoid(&strings(&["1", "e"]), "1", &[strings(&["e", "e", "e"]).try_into().unwrap()]).unwrap()
}

pub fn terminal() -> FinCat {
    FinCat::new(&terminal_description()).unwrap()
}

pub fn gamma() -> FinCat {
    FinCat::new(&gamma_description()).unwrap()
}

pub fn l3() -> FinCat {
    FinCat::new(&l3_description()).unwrap()
}

pub fn diamond() -> FinCat {
    FinCat::new(&diamond_description()).unwrap()
}

pub fn mon_e() -> FinCat {
    FinCat::new(&mon_e_description()).unwrap()
}

/// The fixture zoo, by name.
pub fn descriptions() -> Vec<(&'static str, CategoryDescription)> {
    vec![
        ("terminal", terminal_description()),
        ("gamma", gamma_description()),
        ("l3", l3_description()),
        ("diamond", diamond_description()),
        ("mon_e", mon_e_description()),
    ]
}

pub fn zoo() -> Vec<(&'static str, FinCat)> {
    descriptions().into_iter().map(|(n, d)| (n, FinCat::new(&d).unwrap())).collect()
}

/// The admissible class `{id_x, id_y, id_1, x<=y}` on the chain `x <= y <= 1`.
pub const L3_CLASS: [&str; 4] = ["id_x", "id_y", "id_1", "x<=y"];

/// The translation family `f_x = id_x, f_y = x<=y, f_1 = x<=1` on the chain.
pub const L3_FAMILY: [(&str, &str); 3] = [("x", "id_x"), ("y", "x<=y"), ("1", "x<=1")];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_shapes() {
        let l3 = l3();
        assert_eq!(l3.num_objects(), 3);
        assert_eq!(l3.num_morphisms(), 6);
        let d = diamond();
        assert_eq!(d.num_morphisms(), 4 + 5);
        let cyc = poset(&[], &pairs(&[("a", "b"), ("b", "a")]));
        assert!(matches!(cyc, Err(Error::Malformed(_))));
    }

    #[test]
    fn monoid_table_must_be_complete() {
        let err = monoid(&strings(&["1", "e"]), "1", &[]).unwrap_err();
        assert!(matches!(err, Error::Malformed(m) if m.contains("e*e")));
        let m = mon_e();
        let e = m.morphism("e").unwrap();
        assert_eq!(m.compose(e, e), e);
        assert_eq!(m.mor_name(m.id(m.object("*").unwrap())), "1");
    }
}
