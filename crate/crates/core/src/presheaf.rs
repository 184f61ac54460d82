//! Finite-set-valued presheaves, their subpresheaves and natural transformations.
//!
//! Elements are opaque: `F(C)` is `0..F.size(C)` with a label per element for
//! reporting. Subpresheaves are one [`Bits`] per object.

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Caps, Error, Result};
use crate::fincat::{FinCat, Mor, Obj};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    labels: Vec<Vec<String>>,
    /// Per morphism `h: D -> C`, the function `F(C) -> F(D)`.
    restrict: Vec<Vec<usize>>,
}

impl Presheaf {
    /// Builds and validates a presheaf from element labels per object and one
    /// restriction table per morphism.
    pub fn new(cat: &FinCat, labels: Vec<Vec<String>>, restrict: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPresheaf(msg));
        if labels.len() != cat.num_objects() || restrict.len() != cat.num_morphisms() {
            return bad("wrong number of components".into());
        }
        for m in cat.morphisms() {
            let table = &restrict[m.0];
            if table.len() != labels[cat.cod(m).0].len() {
                return bad(format!("restriction along {} has the wrong domain", cat.mor_name(m)));
            }
            if table.iter().any(|&y| y >= labels[cat.dom(m).0].len()) {
                return bad(format!("restriction along {} leaves its codomain", cat.mor_name(m)));
            }
        }
        let p = Presheaf { labels, restrict };
        for o in cat.objects() {
            let id = cat.id(o);
            if (0..p.size(o)).any(|x| p.restrict(id, x) != x) {
                return bad(format!("restriction along {} is not the identity", cat.mor_name(id)));
            }
        }
        for g in cat.morphisms() {
            for &f in cat.arrows_into(cat.dom(g)) {
                let gf = cat.compose(g, f);
                for x in 0..p.size(cat.cod(g)) {
                    if p.restrict(gf, x) != p.restrict(f, p.restrict(g, x)) {
                        return bad(format!("not functorial at {} ∘ {}", cat.mor_name(g), cat.mor_name(f)));
                    }
                }
            }
        }
        Ok(p)
    }

    /// The representable `y(C) = Hom(-, C)`; elements at `D` are listed in the
    /// order of `cat.hom(D, C)`.
    pub fn yoneda(cat: &FinCat, c: Obj) -> Self {
        let labels =
            cat.objects().map(|d| cat.hom(d, c).iter().map(|&f| cat.mor_name(f).to_string()).collect()).collect();
        let restrict = cat
            .morphisms()
            .map(|h| cat.hom(cat.cod(h), c).iter().map(|&f| yoneda_index(cat, c, cat.compose(f, h))).collect())
            .collect();
        Presheaf { labels, restrict }
    }

    pub fn terminal(cat: &FinCat) -> Self {
        Presheaf {
            labels: vec![vec!["*".to_string()]; cat.num_objects()],
            restrict: vec![vec![0]; cat.num_morphisms()],
        }
    }

    pub fn empty(cat: &FinCat) -> Self {
        Presheaf { labels: vec![Vec::new(); cat.num_objects()], restrict: vec![Vec::new(); cat.num_morphisms()] }
    }

    /// Objectwise cartesian product; the pair `(x, y)` has index `x * |B(C)| + y`.
    pub fn product(cat: &FinCat, a: &Presheaf, b: &Presheaf) -> Self {
        let labels = cat
            .objects()
            .map(|o| {
                let mut v = Vec::with_capacity(a.size(o) * b.size(o));
                for x in &a.labels[o.0] {
                    for y in &b.labels[o.0] {
                        v.push(format!("({x}, {y})"));
                    }
                }
                v
            })
            .collect();
        let restrict = cat
            .morphisms()
            .map(|h| {
                let (c, d) = (cat.cod(h), cat.dom(h));
                let mut t = Vec::with_capacity(a.size(c) * b.size(c));
                for x in 0..a.size(c) {
                    for y in 0..b.size(c) {
                        t.push(a.restrict(h, x) * b.size(d) + b.restrict(h, y));
                    }
                }
                t
            })
            .collect();
        Presheaf { labels, restrict }
    }

    /// A subpresheaf viewed as a presheaf in its own right, together with the
    /// inclusion (new index -> parent index) per object.
    pub fn restrict_to(&self, cat: &FinCat, sub: &Subpresheaf) -> (Presheaf, Vec<Vec<usize>>) {
        let incl: Vec<Vec<usize>> = sub.parts.iter().map(|b| b.iter().collect()).collect();
        let labels = cat.objects().map(|o| incl[o.0].iter().map(|&x| self.labels[o.0][x].clone()).collect()).collect();
        let restrict = cat
            .morphisms()
            .map(|h| {
                let back = &incl[cat.dom(h).0];
                incl[cat.cod(h).0]
                    .iter()
                    .map(|&x| {
                        let y = self.restrict(h, x);
                        back.binary_search(&y).expect("subpresheaf is restriction-closed")
                    })
                    .collect()
            })
            .collect();
        (Presheaf { labels, restrict }, incl)
    }

    pub fn size(&self, o: Obj) -> usize {
        self.labels[o.0].len()
    }

    pub fn total_elements(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn label(&self, o: Obj, x: usize) -> &str {
        &self.labels[o.0][x]
    }

    pub fn element(&self, o: Obj, label: &str) -> Option<usize> {
        self.labels[o.0].iter().position(|l| l == label)
    }

    /// `F(h)(x)`.
    #[inline]
    pub fn restrict(&self, h: Mor, x: usize) -> usize {
        self.restrict[h.0][x]
    }

    pub fn num_objects(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn restriction_tables(&self) -> &[Vec<usize>] {
        &self.restrict
    }

    fn shape_matches(&self, sub: &Subpresheaf) -> bool {
        sub.parts.len() == self.labels.len() && sub.parts.iter().zip(&self.labels).all(|(b, l)| b.len() == l.len())
    }

    fn is_closed(&self, cat: &FinCat, parts: &[Bits]) -> bool {
        cat.objects().all(|c| {
            parts[c.0]
                .iter()
                .all(|x| cat.arrows_into(c).iter().all(|&h| parts[cat.dom(h).0].contains(self.restrict(h, x))))
        })
    }

    pub fn check_sub(&self, cat: &FinCat, sub: &Subpresheaf) -> Result<()> {
        if !self.shape_matches(sub) {
            return Err(Error::ParentMismatch);
        }
        if !self.is_closed(cat, &sub.parts) {
            return Err(Error::InvalidPresheaf("family is not closed under restriction".into()));
        }
        Ok(())
    }

    /// Smallest subpresheaf containing the given elements.
    pub fn generated(&self, cat: &FinCat, gens: &[(Obj, usize)]) -> Subpresheaf {
        let mut sub = Subpresheaf::empty(self);
        for &(c, x) in gens {
            for &h in cat.arrows_into(c) {
                sub.parts[cat.dom(h).0].insert(self.restrict(h, x));
            }
        }
        sub
    }

    /// `G ⇒ H`: elements all of whose restrictions landing in `G` land in `H`.
    pub fn implies(&self, cat: &FinCat, g: &Subpresheaf, h: &Subpresheaf) -> Result<Subpresheaf> {
        if !self.shape_matches(g) || !self.shape_matches(h) {
            return Err(Error::ParentMismatch);
        }
        let mut out = Subpresheaf::empty(self);
        for c in cat.objects() {
            for x in 0..self.size(c) {
                let ok = cat.arrows_into(c).iter().all(|&k| {
                    let d = cat.dom(k).0;
                    let y = self.restrict(k, x);
                    !g.parts[d].contains(y) || h.parts[d].contains(y)
                });
                if ok {
                    out.parts[c.0].insert(x);
                }
            }
        }
        Ok(out)
    }

    /// Heyting negation `G ⇒ ∅`.
    pub fn negation(&self, cat: &FinCat, g: &Subpresheaf) -> Result<Subpresheaf> {
        self.implies(cat, g, &Subpresheaf::empty(self))
    }

    /// Negation by the direct rule: no restriction of `x` lies in `G`.
    pub fn negation_pointwise(&self, cat: &FinCat, g: &Subpresheaf) -> Result<Subpresheaf> {
        if !self.shape_matches(g) {
            return Err(Error::ParentMismatch);
        }
        let mut out = Subpresheaf::empty(self);
        for c in cat.objects() {
            for x in 0..self.size(c) {
                if cat.arrows_into(c).iter().all(|&f| !g.parts[cat.dom(f).0].contains(self.restrict(f, x))) {
                    out.parts[c.0].insert(x);
                }
            }
        }
        Ok(out)
    }

    /// All subpresheaves, in ascending canonical order.
    pub fn enumerate_subpresheaves(&self, cat: &FinCat, caps: &Caps) -> Result<Vec<Subpresheaf>> {
        Caps::check("max_elements", self.total_elements(), caps.max_elements)?;
        let principal: Vec<Subpresheaf> = cat
            .objects()
            .flat_map(|c| (0..self.size(c)).map(move |x| (c, x)))
            .map(|g| self.generated(cat, &[g]))
            .collect();
        let start = Subpresheaf::empty(self);
        let mut seen: HashSet<Subpresheaf> = HashSet::from([start.clone()]);
        let mut frontier = vec![start];
        while let Some(s) = frontier.pop() {
            for p in &principal {
                if p.is_subset(&s) {
                    continue;
                }
                let u = s.join(p);
                if seen.insert(u.clone()) {
                    Caps::check("max_subobjects", seen.len(), caps.max_subobjects)?;
                    frontier.push(u);
                }
            }
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort();
        Ok(all)
    }
}

/// Position of `f: D -> C` among the elements of `y(C)(D)`.
pub fn yoneda_index(cat: &FinCat, c: Obj, f: Mor) -> usize {
    cat.hom(cat.dom(f), c).iter().position(|&g| g == f).expect("morphism has the given codomain")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subpresheaf {
    parts: Vec<Bits>,
}

impl Subpresheaf {
    pub fn empty(parent: &Presheaf) -> Self {
        Subpresheaf { parts: parent.labels.iter().map(|l| Bits::empty(l.len())).collect() }
    }

    pub fn full(parent: &Presheaf) -> Self {
        Subpresheaf { parts: parent.labels.iter().map(|l| Bits::full(l.len())).collect() }
    }

    /// Validated construction from per-object member sets.
    pub fn from_parts(cat: &FinCat, parent: &Presheaf, parts: Vec<Bits>) -> Result<Self> {
        let s = Subpresheaf { parts };
        parent.check_sub(cat, &s)?;
        Ok(s)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<Bits>) -> Self {
        Subpresheaf { parts }
    }

    pub fn at(&self, o: Obj) -> &Bits {
        &self.parts[o.0]
    }

    pub fn parts(&self) -> &[Bits] {
        &self.parts
    }

    pub fn contains(&self, o: Obj, x: usize) -> bool {
        self.parts[o.0].contains(x)
    }

    pub fn is_subset(&self, other: &Subpresheaf) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subset(b))
    }

    pub fn meet(&self, other: &Subpresheaf) -> Subpresheaf {
        Subpresheaf { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.intersection(b)).collect() }
    }

    pub fn join(&self, other: &Subpresheaf) -> Subpresheaf {
        Subpresheaf { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.union(b)).collect() }
    }

    pub fn count(&self) -> usize {
        self.parts.iter().map(Bits::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(Bits::is_empty)
    }
}

/// A natural transformation given by its components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTrans {
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityFailure {
    pub morphism: String,
    pub element: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub failures: Vec<NaturalityFailure>,
}

impl NaturalityReport {
    pub fn is_natural(&self) -> bool {
        self.failures.is_empty()
    }
}

impl NatTrans {
    pub fn identity(f: &Presheaf) -> Self {
        NatTrans { components: f.labels.iter().map(|l| (0..l.len()).collect()).collect() }
    }

    /// `y(h): y(C) -> y(D)` for `h: C -> D`, postcomposition with `h`.
    pub fn yoneda_map(cat: &FinCat, h: Mor) -> Self {
        let (c, d) = (cat.dom(h), cat.cod(h));
        NatTrans {
            components: cat
                .objects()
                .map(|x| cat.hom(x, c).iter().map(|&f| yoneda_index(cat, d, cat.compose(h, f))).collect())
                .collect(),
        }
    }

    /// Lists every failing naturality square. Component shape errors are
    /// reported as errors.
    pub fn validate(&self, cat: &FinCat, source: &Presheaf, target: &Presheaf) -> Result<NaturalityReport> {
        if self.components.len() != cat.num_objects() {
            return Err(Error::Malformed("wrong number of components".into()));
        }
        for o in cat.objects() {
            let comp = &self.components[o.0];
            if comp.len() != source.size(o) || comp.iter().any(|&y| y >= target.size(o)) {
                return Err(Error::Malformed(format!(
                    "component at {} does not map source to target",
                    cat.obj_name(o)
                )));
            }
        }
        let mut report = NaturalityReport::default();
        for h in cat.morphisms() {
            let (d, c) = (cat.dom(h), cat.cod(h));
            for x in 0..source.size(c) {
                let left = self.components[d.0][source.restrict(h, x)];
                let right = target.restrict(h, self.components[c.0][x]);
                if left != right {
                    report.failures.push(NaturalityFailure {
                        morphism: cat.mor_name(h).to_string(),
                        element: source.label(c, x).to_string(),
                    });
                }
            }
        }
        Ok(report)
    }

    /// `α⁻¹(G)` for `α: H -> F` and `G ≤ F`.
    pub fn preimage(&self, source: &Presheaf, g: &Subpresheaf) -> Subpresheaf {
        Subpresheaf {
            parts: self
                .components
                .iter()
                .enumerate()
                .map(|(o, comp)| {
                    Bits::from_indices(
                        source.labels[o].len(),
                        comp.iter().enumerate().filter(|(_, &y)| g.parts[o].contains(y)).map(|(x, _)| x),
                    )
                })
                .collect(),
        }
    }

    /// Every natural transformation `source -> target`, at most `limit` of them.
    pub fn enumerate(cat: &FinCat, source: &Presheaf, target: &Presheaf, limit: usize) -> Vec<NatTrans> {
        // slots: one per source element, filled object by object
        let slots: Vec<(Obj, usize)> = cat.objects().flat_map(|o| (0..source.size(o)).map(move |x| (o, x))).collect();
        let mut comps: Vec<Vec<Option<usize>>> = cat.objects().map(|o| vec![None; source.size(o)]).collect();
        let mut out = Vec::new();
        fn consistent(
            cat: &FinCat,
            s: &Presheaf,
            t: &Presheaf,
            comps: &[Vec<Option<usize>>],
            o: Obj,
            x: usize,
        ) -> bool {
            let y = comps[o.0][x].unwrap();
            // squares where (o, x) is the upper corner
            for &h in cat.arrows_into(o) {
                if let Some(z) = comps[cat.dom(h).0][s.restrict(h, x)] {
                    if z != t.restrict(h, y) {
                        return false;
                    }
                }
            }
            // squares where (o, x) is a restriction of an assigned element
            for &h in cat.out_of(o) {
                let c = cat.cod(h);
                for (w, assigned) in comps[c.0].iter().enumerate() {
                    if let Some(v) = assigned {
                        if s.restrict(h, w) == x && t.restrict(h, *v) != y {
                            return false;
                        }
                    }
                }
            }
            true
        }
        #[allow(clippy::too_many_arguments)]
        fn go(
            cat: &FinCat,
            s: &Presheaf,
            t: &Presheaf,
            slots: &[(Obj, usize)],
            i: usize,
            comps: &mut Vec<Vec<Option<usize>>>,
            out: &mut Vec<NatTrans>,
            limit: usize,
        ) {
            if out.len() >= limit {
                return;
            }
            if i == slots.len() {
                out.push(NatTrans {
                    components: comps.iter().map(|c| c.iter().map(|v| v.unwrap()).collect()).collect(),
                });
                return;
            }
            let (o, x) = slots[i];
            for y in 0..t.size(o) {
                comps[o.0][x] = Some(y);
                if consistent(cat, s, t, comps, o, x) {
                    go(cat, s, t, slots, i + 1, comps, out, limit);
                }
            }
            comps[o.0][x] = None;
        }
        go(cat, source, target, &slots, 0, &mut comps, &mut out, limit);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn yoneda_elements() {
        let one = fixtures::terminal();
        assert_eq!(Presheaf::yoneda(&one, Obj(0)).total_elements(), 1);

        let g = fixtures::gamma();
        let ya = Presheaf::yoneda(&g, g.object("A").unwrap());
        assert_eq!(ya.labels()[0], vec!["s", "t"]);
        assert_eq!(ya.labels()[1], vec!["id_A"]);

        let l3 = fixtures::l3();
        let yy = Presheaf::yoneda(&l3, l3.object("y").unwrap());
        assert_eq!(yy.labels(), &[vec!["x<=y".to_string()], vec!["id_y".into()], vec![]]);
        // yoneda presheaves pass the functoriality check
        for (_, cat) in fixtures::zoo() {
            for c in cat.objects() {
                let y = Presheaf::yoneda(&cat, c);
                Presheaf::new(&cat, y.labels.clone(), y.restrict.clone()).unwrap();
            }
        }
    }

    #[test]
    fn subpresheaf_counts() {
        let caps = Caps::default();
        let g = fixtures::gamma();
        let ya = Presheaf::yoneda(&g, g.object("A").unwrap());
        assert_eq!(ya.enumerate_subpresheaves(&g, &caps).unwrap().len(), 5);
        assert_eq!(Presheaf::empty(&g).enumerate_subpresheaves(&g, &caps).unwrap().len(), 1);
        let l3 = fixtures::l3();
        let y1 = Presheaf::yoneda(&l3, l3.object("1").unwrap());
        assert_eq!(y1.enumerate_subpresheaves(&l3, &caps).unwrap().len(), 4);
    }

    #[test]
    fn element_cap() {
        let l3 = fixtures::l3();
        let y1 = Presheaf::yoneda(&l3, l3.object("1").unwrap());
        let caps = Caps { max_elements: 2, ..Caps::default() };
        assert!(matches!(y1.enumerate_subpresheaves(&l3, &caps), Err(Error::CapExceeded { key: "max_elements", .. })));
    }

    #[test]
    fn negation_examples() {
        let l3 = fixtures::l3();
        let one = l3.object("1").unwrap();
        let x = l3.object("x").unwrap();
        let y1 = Presheaf::yoneda(&l3, one);
        let full = Subpresheaf::full(&y1);
        let empty = Subpresheaf::empty(&y1);
        assert_eq!(y1.negation(&l3, &empty).unwrap(), full);
        assert_eq!(y1.negation(&l3, &full).unwrap(), empty);
        let g = y1.generated(&l3, &[(x, y1.element(x, "x<=1").unwrap())]);
        assert_eq!(y1.negation(&l3, &g).unwrap(), empty);
        assert_eq!(y1.negation_pointwise(&l3, &g).unwrap(), empty);
    }

    #[test]
    fn parent_mismatch() {
        let l3 = fixtures::l3();
        let y1 = Presheaf::yoneda(&l3, l3.object("1").unwrap());
        let yx = Presheaf::yoneda(&l3, l3.object("x").unwrap());
        let g = Subpresheaf::full(&yx);
        assert!(matches!(y1.negation(&l3, &g), Err(Error::ParentMismatch)));
    }

    #[test]
    fn heyting_adjunction_and_negation_agree() {
        let caps = Caps::default();
        for (_, cat) in fixtures::zoo() {
            for c in cat.objects() {
                let f = Presheaf::yoneda(&cat, c);
                let subs = f.enumerate_subpresheaves(&cat, &caps).unwrap();
                for g in &subs {
                    assert_eq!(f.negation(&cat, g).unwrap(), f.negation_pointwise(&cat, g).unwrap());
                    for h in &subs {
                        let imp = f.implies(&cat, h, g).unwrap();
                        f.check_sub(&cat, &imp).unwrap();
                        for k in &subs {
                            // k ∧ h ≤ g  iff  k ≤ (h ⇒ g)
                            assert_eq!(k.meet(h).is_subset(g), k.is_subset(&imp));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn natural_transformations() {
        let l3 = fixtures::l3();
        for c in l3.objects() {
            let y = Presheaf::yoneda(&l3, c);
            assert!(NatTrans::identity(&y).validate(&l3, &y, &y).unwrap().is_natural());
        }
        for h in l3.morphisms() {
            let (a, b) = (Presheaf::yoneda(&l3, l3.dom(h)), Presheaf::yoneda(&l3, l3.cod(h)));
            assert!(NatTrans::yoneda_map(&l3, h).validate(&l3, &a, &b).unwrap().is_natural());
        }
        // Yoneda: natural maps y(C) -> F correspond to F(C)
        let yy = Presheaf::yoneda(&l3, l3.object("y").unwrap());
        let y1 = Presheaf::yoneda(&l3, l3.object("1").unwrap());
        let all = NatTrans::enumerate(&l3, &yy, &y1, 1000);
        assert_eq!(all.len(), 1);
        let t = Presheaf::terminal(&l3);
        assert_eq!(NatTrans::enumerate(&l3, &y1, &t, 1000).len(), 1);
        for a in NatTrans::enumerate(&l3, &y1, &y1, 1000) {
            assert!(a.validate(&l3, &y1, &y1).unwrap().is_natural());
        }
    }

    #[test]
    fn component_shape_error() {
        let l3 = fixtures::l3();
        let y1 = Presheaf::yoneda(&l3, l3.object("1").unwrap());
        let bad = NatTrans { components: vec![vec![0]] };
        assert!(bad.validate(&l3, &y1, &y1).is_err());
    }

    #[test]
    fn functoriality_is_checked() {
        let g = fixtures::gamma();
        // one node, two arcs, but restriction along id_A swaps the arcs
        let labels = vec![vec!["v".into()], vec!["a".into(), "b".into()]];
        let restrict = vec![vec![0], vec![1, 0], vec![0, 0], vec![0, 0]];
        assert!(matches!(Presheaf::new(&g, labels, restrict), Err(Error::InvalidPresheaf(_))));
    }
}
