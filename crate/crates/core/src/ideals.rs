//! Ideals of a presheaf topos: sieve-valued subfunctors of the Yoneda functor.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Caps, Error, Result};
use crate::fincat::{FinCat, Mor, Obj};
use crate::omega::{is_sieve, parse_sieve, sieve_names, Omega, OmegaEndo, WeakGrothendieck};
use crate::presheaf::{Presheaf, Subpresheaf};

/// A sieve `I_C` per object with `f ∘ g ∈ I_D` whenever `g ∈ I_C` and `f: C -> D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    parts: Vec<Bits>,
}

impl Ideal {
    pub fn new(cat: &FinCat, parts: Vec<Bits>) -> Result<Self> {
        if parts.len() != cat.num_objects() {
            return Err(Error::InvalidIdeal("wrong number of components".into()));
        }
        for c in cat.objects() {
            if !is_sieve(cat, c, &parts[c.0]) {
                return Err(Error::InvalidIdeal(format!("component at {} is not a sieve", cat.obj_name(c))));
            }
        }
        for f in cat.morphisms() {
            let (c, d) = (cat.dom(f), cat.cod(f));
            if let Some(g) = parts[c.0].iter().map(Mor).find(|&g| !parts[d.0].contains(cat.compose(f, g).0)) {
                return Err(Error::InvalidIdeal(format!(
                    "{} ∈ I({}) but {} ∘ {} ∉ I({})",
                    cat.mor_name(g),
                    cat.obj_name(c),
                    cat.mor_name(f),
                    cat.mor_name(g),
                    cat.obj_name(d)
                )));
            }
        }
        Ok(Ideal { parts })
    }

    /// From morphism names per object name; unlisted objects get `∅`.
    pub fn from_names(cat: &FinCat, names: &BTreeMap<String, Vec<String>>) -> Result<Self> {
        let mut parts: Vec<Bits> = cat.objects().map(|_| Bits::empty(cat.num_morphisms())).collect();
        for (o, ms) in names {
            let c = cat.object(o)?;
            parts[c.0] = parse_sieve(cat, c, ms).map_err(|e| Error::InvalidIdeal(e.to_string()))?;
        }
        Ideal::new(cat, parts)
    }

    pub fn to_names(&self, cat: &FinCat) -> BTreeMap<String, Vec<String>> {
        cat.objects().map(|c| (cat.obj_name(c).to_string(), sieve_names(cat, &self.parts[c.0]))).collect()
    }

    pub fn empty(cat: &FinCat) -> Self {
        Ideal { parts: cat.objects().map(|_| Bits::empty(cat.num_morphisms())).collect() }
    }

    /// The Yoneda ideal `I_C = t(C)`.
    pub fn yoneda(cat: &FinCat) -> Self {
        Ideal { parts: cat.objects().map(|c| cat.into_bits(c)).collect() }
    }

    pub fn at(&self, c: Obj) -> &Bits {
        &self.parts[c.0]
    }

    pub fn is_nonempty_everywhere(&self) -> bool {
        self.parts.iter().all(|p| !p.is_empty())
    }

    /// `I²(C) = {f ∘ g | f ∈ I_C, g ∈ I_{D_f}}`.
    pub fn square(&self, cat: &FinCat) -> Ideal {
        Ideal {
            parts: cat
                .objects()
                .map(|c| {
                    let mut b = Bits::empty(cat.num_morphisms());
                    for f in self.parts[c.0].iter().map(Mor) {
                        for g in self.parts[cat.dom(f).0].iter().map(Mor) {
                            b.insert(cat.compose(f, g).0);
                        }
                    }
                    b
                })
                .collect(),
        }
    }

    pub fn is_idempotent(&self, cat: &FinCat) -> bool {
        &self.square(cat) == self
    }

    /// `Ḡ(C) = {x | ∀f ∈ I_C, F(f)(x) ∈ G(D_f)}`.
    pub fn closure(&self, cat: &FinCat, f: &Presheaf, g: &Subpresheaf) -> Subpresheaf {
        Subpresheaf::from_parts_unchecked(
            cat.objects()
                .map(|c| {
                    Bits::from_indices(
                        f.size(c),
                        (0..f.size(c)).filter(|&x| {
                            self.parts[c.0].iter().map(Mor).all(|h| g.contains(cat.dom(h), f.restrict(h, x)))
                        }),
                    )
                })
                .collect(),
        )
    }

    /// `j^I(S) = {f | ∀g ∈ I_{D_f}, f ∘ g ∈ S}`.
    pub fn weak_topology(&self, omega: &Omega) -> OmegaEndo {
        let cat = omega.cat();
        OmegaEndo::from_fn(omega, |c, s| {
            Bits::from_indices(
                cat.num_morphisms(),
                cat.arrows_into(c)
                    .iter()
                    .filter(|&&f| self.parts[cat.dom(f).0].iter().all(|g| s.contains(cat.compose(f, Mor(g)).0)))
                    .map(|f| f.0),
            )
        })
        .expect("j^I yields sieves")
    }

    /// `J^I(C) = {S | I_C ⊆ S}`.
    pub fn grothendieck(&self, omega: &Omega) -> WeakGrothendieck {
        WeakGrothendieck::from_predicate(omega, |c, s| self.parts[c.0].is_subset(s))
    }

    /// `¬¬_I(S) = {f | ∀g ∈ I_{D_f} ∃h ∈ I_{D_g}, f∘g∘h ∈ S}`.
    pub fn double_negation(&self, omega: &Omega) -> OmegaEndo {
        let cat = omega.cat();
        OmegaEndo::from_fn(omega, |c, s| {
            Bits::from_indices(
                cat.num_morphisms(),
                cat.arrows_into(c)
                    .iter()
                    .filter(|&&f| {
                        self.parts[cat.dom(f).0].iter().map(Mor).all(|g| {
                            let fg = cat.compose(f, g);
                            self.parts[cat.dom(g).0].iter().any(|h| s.contains(cat.compose(fg, Mor(h)).0))
                        })
                    })
                    .map(|f| f.0),
            )
        })
        .expect("¬¬_I yields sieves")
    }

    /// `{T | ∀h, (∀k ∈ I_{D_h}, h∘k ∈ T) ⇔ h ∈ T}` per object, as sieve indices.
    pub fn omega_literal(&self, omega: &Omega) -> Vec<Bits> {
        let cat = omega.cat();
        cat.objects()
            .map(|c| {
                Bits::from_indices(
                    omega.size(c),
                    omega
                        .sieves(c)
                        .iter()
                        .enumerate()
                        .filter(|(_, t)| {
                            cat.arrows_into(c).iter().all(|&h| {
                                let lhs = self.parts[cat.dom(h).0].iter().all(|k| t.contains(cat.compose(h, Mor(k)).0));
                                lhs == t.contains(h.0)
                            })
                        })
                        .map(|(i, _)| i),
                )
            })
            .collect()
    }

    /// For every `f ∈ I_C`, `g: D_g -> D_f` and `h` into `D_g`:
    /// `h ∈ I_{D_g} ⇔ g∘h ∈ I_{D_f}`, split into its two implications.
    pub fn matching_family_check(&self, cat: &FinCat, c: Obj) -> MatchingFamilyCheck {
        let mut r = MatchingFamilyCheck { forward: true, backward: true, witness: None };
        for f in self.parts[c.0].iter().map(Mor) {
            for &g in cat.arrows_into(cat.dom(f)) {
                for &h in cat.arrows_into(cat.dom(g)) {
                    let left = self.parts[cat.dom(g).0].contains(h.0);
                    let right = self.parts[cat.dom(f).0].contains(cat.compose(g, h).0);
                    if left && !right {
                        r.forward = false;
                    }
                    if right && !left {
                        r.backward = false;
                    }
                    if left != right && r.witness.is_none() {
                        r.witness = Some([f, g, h].map(|m| cat.mor_name(m).to_string()));
                    }
                }
            }
        }
        r
    }

    /// `∀g, ∀f ∈ I_{cod g}: g⁻¹(f) ∈ I_{dom g}`; a missing pullback counts as failure.
    pub fn is_pullback_stable(&self, cat: &FinCat) -> bool {
        cat.morphisms().all(|g| {
            self.parts[cat.cod(g).0].iter().all(|f| match cat.pullback_along(g, Mor(f)) {
                Some(l) => self.parts[cat.dom(g).0].contains(l.0),
                None => false,
            })
        })
    }

    /// `∀g, ∀f ∈ t(cod g): g⁻¹(f) ∈ I_{dom g} ⇒ f ∈ I_{cod g}`, over existing pullbacks.
    pub fn is_converse_pullback_stable(&self, cat: &FinCat) -> bool {
        cat.morphisms().all(|g| {
            cat.arrows_into(cat.cod(g)).iter().all(|&f| match cat.pullback_along(g, f) {
                Some(l) => !self.parts[cat.dom(g).0].contains(l.0) || self.parts[cat.cod(g).0].contains(f.0),
                None => true,
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingFamilyCheck {
    pub forward: bool,
    pub backward: bool,
    /// `[f, g, h]` on which the biconditional fails.
    pub witness: Option<[String; 3]>,
}

impl MatchingFamilyCheck {
    pub fn holds(&self) -> bool {
        self.forward && self.backward
    }
}

/// All ideals, by backtracking over objects with post-composition pruning.
pub fn enumerate_ideals(omega: &Omega, caps: &Caps) -> Result<Vec<Ideal>> {
    let cat = omega.cat();
    // objects with more incoming constraints first
    let mut order: Vec<Obj> = cat.objects().collect();
    order.sort_by_key(|&c| std::cmp::Reverse(cat.arrows_into(c).len()));
    let mut chosen: Vec<Option<usize>> = vec![None; cat.num_objects()];
    let mut out = Vec::new();

    fn compatible(omega: &Omega, chosen: &[Option<usize>], c: Obj) -> bool {
        let cat = omega.cat();
        let ic = omega.sieve(c, chosen[c.0].unwrap());
        // arrows out of c push I_C forward
        for &f in cat.out_of(c) {
            if let Some(k) = chosen[cat.cod(f).0] {
                let id = omega.sieve(cat.cod(f), k);
                if ic.iter().any(|g| !id.contains(cat.compose(f, Mor(g)).0)) {
                    return false;
                }
            }
        }
        // arrows into c receive earlier components
        for &f in cat.arrows_into(c) {
            if let Some(k) = chosen[cat.dom(f).0] {
                let src = omega.sieve(cat.dom(f), k);
                if src.iter().any(|g| !ic.contains(cat.compose(f, Mor(g)).0)) {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        omega: &Omega,
        order: &[Obj],
        i: usize,
        chosen: &mut Vec<Option<usize>>,
        out: &mut Vec<Ideal>,
        caps: &Caps,
    ) -> Result<()> {
        if i == order.len() {
            Caps::check("max_subobjects", out.len() + 1, caps.max_subobjects)?;
            out.push(Ideal {
                parts: chosen.iter().enumerate().map(|(c, k)| omega.sieve(Obj(c), k.unwrap()).clone()).collect(),
            });
            return Ok(());
        }
        let c = order[i];
        for k in 0..omega.size(c) {
            chosen[c.0] = Some(k);
            if compatible(omega, chosen, c) {
                go(omega, order, i + 1, chosen, out, caps)?;
            }
        }
        chosen[c.0] = None;
        Ok(())
    }

    go(omega, &order, 0, &mut chosen, &mut out, caps)?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::omega::{check_weak_topology, closure_from_j, grothendieck_from_j, omega_j};
    use crate::presheaf::NatTrans;

    fn caps() -> Caps {
        Caps::default()
    }

    fn ideal(cat: &FinCat, items: &[(&str, &[&str])]) -> Ideal {
        let m = items.iter().map(|(o, ms)| (o.to_string(), ms.iter().map(|s| s.to_string()).collect())).collect();
        Ideal::from_names(cat, &m).unwrap()
    }

    /// Brute force over the full product of sieve sets, revalidating each.
    fn brute_ideals(omega: &Omega) -> Vec<Ideal> {
        let cat = omega.cat();
        let sizes: Vec<usize> = cat.objects().map(|c| omega.size(c)).collect();
        let mut idx = vec![0; sizes.len()];
        let mut out = Vec::new();
        loop {
            let parts = cat.objects().map(|c| omega.sieve(c, idx[c.0]).clone()).collect();
            if let Ok(i) = Ideal::new(cat, parts) {
                out.push(i);
            }
            let mut p = 0;
            loop {
                if p == idx.len() {
                    out.sort();
                    return out;
                }
                idx[p] += 1;
                if idx[p] < sizes[p] {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    #[test]
    fn gamma_has_seven_ideals() {
        let g = fixtures::gamma();
        let om = Omega::new(&g, &caps()).unwrap();
        let all = enumerate_ideals(&om, &caps()).unwrap();
        assert_eq!(all, brute_ideals(&om));
        // I_N = ∅ leaves all 5 sieves on A; I_N = {id_N} forces {s, t} ⊆ I_A
        assert_eq!(all.len(), 7);
        assert!(all.contains(&Ideal::empty(&g)));
        assert!(all.contains(&ideal(&g, &[("N", &["id_N"]), ("A", &["s", "t"])])));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (name, cat) in fixtures::zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            assert_eq!(enumerate_ideals(&om, &caps()).unwrap(), brute_ideals(&om), "{name}");
        }
    }

    #[test]
    fn mon_e_two_sided_ideals() {
        let m = fixtures::mon_e();
        let om = Omega::new(&m, &caps()).unwrap();
        let all = enumerate_ideals(&om, &caps()).unwrap();
        let names: Vec<_> = all.iter().map(|i| i.to_names(&m)["*"].clone()).collect();
        assert_eq!(names.len(), 3);
        for want in [vec![], vec!["e".to_string()], vec!["1".into(), "e".into()]] {
            assert!(names.contains(&want), "{names:?}");
        }
        let e = ideal(&m, &[("*", &["e"])]);
        assert_eq!(e.square(&m), e);
    }

    #[test]
    fn l3_ideal_and_validation() {
        let l3 = fixtures::l3();
        ideal(&l3, &[("y", &["x<=y"]), ("1", &["x<=1"])]);
        let bad = BTreeMap::from([("y".to_string(), vec!["x<=y".to_string()])]);
        assert!(matches!(Ideal::from_names(&l3, &bad), Err(Error::InvalidIdeal(_))));
    }

    #[test]
    fn squares_and_topologies() {
        for (name, cat) in fixtures::zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            for i in enumerate_ideals(&om, &caps()).unwrap() {
                let sq = i.square(&cat);
                Ideal::new(&cat, sq.parts.clone()).unwrap();
                let j = i.weak_topology(&om);
                let r = check_weak_topology(&om, &j);
                assert!(r.weak && r.productive && r.monotone, "{name}");
                assert_eq!(r.idempotent, i.is_idempotent(&cat), "{name}");
                if i.is_idempotent(&cat) {
                    assert_eq!(i.grothendieck(&om), grothendieck_from_j(&om, &j));
                }
                // literal fixed-point description
                assert_eq!(i.omega_literal(&om), omega_j(&om, &j).parts().to_vec());
                for c in cat.objects() {
                    assert!(i.matching_family_check(&cat, c).forward);
                }
            }
            assert_eq!(Ideal::yoneda(&cat).weak_topology(&om), OmegaEndo::identity(&om));
            assert_eq!(Ideal::empty(&cat).weak_topology(&om), OmegaEndo::constant_true(&om));
            assert!(Ideal::yoneda(&cat).is_idempotent(&cat));
        }
    }

    #[test]
    fn closure_agrees_with_j() {
        for (name, cat) in fixtures::zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            let mut targets: Vec<Presheaf> = cat.objects().map(|c| Presheaf::yoneda(&cat, c)).collect();
            targets.push(om.as_presheaf());
            for i in enumerate_ideals(&om, &caps()).unwrap() {
                let j = i.weak_topology(&om);
                let idem = i.is_idempotent(&cat);
                let mut closure_idempotent = true;
                for f in &targets {
                    for g in f.enumerate_subpresheaves(&cat, &caps()).unwrap() {
                        let cl = i.closure(&cat, f, &g);
                        assert_eq!(cl, closure_from_j(&om, &j, f, &g), "{name}");
                        f.check_sub(&cat, &cl).unwrap();
                        assert!(g.is_subset(&cl));
                        if i.closure(&cat, f, &cl) != cl {
                            closure_idempotent = false;
                        }
                    }
                }
                assert_eq!(closure_idempotent, idem, "{name}");
            }
        }
    }

    #[test]
    fn closure_is_modal() {
        let l3 = fixtures::l3();
        let om = Omega::new(&l3, &caps()).unwrap();
        let ys: Vec<Presheaf> = l3.objects().map(|c| Presheaf::yoneda(&l3, c)).collect();
        for i in enumerate_ideals(&om, &caps()).unwrap() {
            for h in &ys {
                for f in &ys {
                    for a in NatTrans::enumerate(&l3, h, f, 64) {
                        for g in f.enumerate_subpresheaves(&l3, &caps()).unwrap() {
                            let lhs = a.preimage(h, &i.closure(&l3, f, &g));
                            let rhs = i.closure(&l3, h, &a.preimage(h, &g));
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn double_negation_relative() {
        for (_, cat) in fixtures::zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            let nn = crate::omega::double_negation(&om);
            assert_eq!(Ideal::yoneda(&cat).double_negation(&om), nn);
            for i in enumerate_ideals(&om, &caps()).unwrap() {
                let nni = i.double_negation(&om);
                if i.is_nonempty_everywhere() {
                    for c in cat.objects() {
                        assert_eq!(nni.at(c, om.top(c)), om.top(c));
                    }
                    assert_eq!(nni, nn);
                    if i.is_idempotent(&cat) {
                        assert!(i.weak_topology(&om).le(&om, &nn));
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_named_ideals() {
        let g = fixtures::gamma();
        let om = Omega::new(&g, &caps()).unwrap();
        let i0 = Ideal::empty(&g);
        let i1 = ideal(&g, &[("N", &["id_N"]), ("A", &["s", "t"])]);
        assert!(i0.is_idempotent(&g) && i1.is_idempotent(&g));
        assert_eq!(i0.weak_topology(&om), OmegaEndo::constant_true(&om));
        let j1 = i1.weak_topology(&om);
        assert!(check_weak_topology(&om, &j1).topology);
        // the pair {s, t} covers A, so j^{I'} is not the identity
        let a = g.object("A").unwrap();
        let st = parse_sieve(&g, a, &["s", "t"]).unwrap();
        assert_eq!(j1.apply(&om, a, &st), &g.into_bits(a));
        assert_ne!(j1, OmegaEndo::identity(&om));
        let mf = i1.matching_family_check(&g, a);
        assert!(mf.holds());
        // with I_N empty the existential over I_N has no witness, even on t(A)
        let i2 = ideal(&g, &[("A", &["s", "t"])]);
        let nn2 = i2.double_negation(&om);
        assert!(!nn2.apply(&om, a, &g.into_bits(a)).contains(g.id(a).0));
    }
}
