//! Admissible classes of monos, the presheaf `M`, quantifiers over a presheaf,
//! the mono `μ_M: Ω -> Ω^M` and partial maps.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Caps, Error, Result};
use crate::fincat::{FinCat, Mor, Obj};
use crate::omega::{sieve_names, Omega, OmegaEndo, WeakGrothendieck};
use crate::presheaf::{yoneda_index, Presheaf, Subpresheaf};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdmissibleReport {
    pub monic: bool,
    pub identities: bool,
    pub composition: bool,
    pub pullback: bool,
    pub witnesses: Vec<String>,
}

impl AdmissibleReport {
    pub fn is_valid(&self) -> bool {
        self.monic && self.identities && self.composition && self.pullback
    }
}

/// A class of monos containing identities, closed under composition and under
/// chosen pullbacks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleClass {
    arrows: Bits,
}

impl AdmissibleClass {
    pub fn validate(cat: &FinCat, arrows: &Bits) -> AdmissibleReport {
        let mut r = AdmissibleReport {
            monic: true,
            identities: true,
            composition: true,
            pullback: true,
            witnesses: Vec::new(),
        };
        for m in arrows.iter().map(Mor) {
            if !cat.is_mono(m) {
                r.monic = false;
                r.witnesses.push(format!("{} is not monic", cat.mor_name(m)));
            }
        }
        for c in cat.objects() {
            if !arrows.contains(cat.id(c).0) {
                r.identities = false;
                r.witnesses.push(format!("missing {}", cat.mor_name(cat.id(c))));
            }
        }
        for m in arrows.iter().map(Mor) {
            for n in arrows.iter().map(Mor) {
                if let Some(mn) = cat.try_compose(m, n) {
                    if !arrows.contains(mn.0) {
                        r.composition = false;
                        r.witnesses.push(format!(
                            "{} ∘ {} = {} is missing",
                            cat.mor_name(m),
                            cat.mor_name(n),
                            cat.mor_name(mn)
                        ));
                    }
                }
            }
            for &g in cat.arrows_into(cat.cod(m)) {
                match cat.pullback_along(g, m) {
                    Some(l) if arrows.contains(l.0) => {}
                    Some(l) => {
                        r.pullback = false;
                        r.witnesses.push(format!(
                            "pullback of {} along {} is {}, which is missing",
                            cat.mor_name(m),
                            cat.mor_name(g),
                            cat.mor_name(l)
                        ));
                    }
                    None => {
                        r.pullback = false;
                        r.witnesses.push(format!("no pullback of {} along {}", cat.mor_name(m), cat.mor_name(g)));
                    }
                }
            }
        }
        r
    }

    pub fn new(cat: &FinCat, arrows: Bits) -> Result<Self> {
        let r = Self::validate(cat, &arrows);
        if r.is_valid() {
            Ok(AdmissibleClass { arrows })
        } else {
            Err(Error::InvalidAdmissible(r.witnesses.join("; ")))
        }
    }

    pub fn from_names<S: AsRef<str>>(cat: &FinCat, names: &[S]) -> Result<Self> {
        let mut b = Bits::empty(cat.num_morphisms());
        for n in names {
            b.insert(cat.morphism(n.as_ref())?.0);
        }
        Self::new(cat, b)
    }

    pub fn identities(cat: &FinCat) -> Self {
        AdmissibleClass { arrows: Bits::from_indices(cat.num_morphisms(), cat.objects().map(|c| cat.id(c).0)) }
    }

    /// The class of all monos, when it is admissible.
    pub fn all_monos(cat: &FinCat) -> Result<Self> {
        Self::new(cat, cat.monos())
    }

    pub fn arrows(&self) -> &Bits {
        &self.arrows
    }

    pub fn contains(&self, m: Mor) -> bool {
        self.arrows.contains(m.0)
    }

    pub fn names(&self, cat: &FinCat) -> Vec<String> {
        sieve_names(cat, &self.arrows)
    }
}

/// Smallest class containing `seed` and the identities that is closed under
/// composition and chosen pullbacks; `None` if a needed pullback is missing.
pub fn admissible_closure(cat: &FinCat, seed: &Bits) -> Option<Bits> {
    let mut b = seed.clone();
    for c in cat.objects() {
        b.insert(cat.id(c).0);
    }
    loop {
        let mut grew = false;
        let members: Vec<Mor> = b.iter().map(Mor).collect();
        for &m in &members {
            for &n in &members {
                if let Some(mn) = cat.try_compose(m, n) {
                    grew |= b.insert(mn.0);
                }
            }
            for &g in cat.arrows_into(cat.cod(m)) {
                grew |= b.insert(cat.pullback_along(g, m)?.0);
            }
        }
        if !grew {
            return Some(b);
        }
    }
}

/// Every admissible class, in ascending order.
pub fn enumerate_admissible_classes(cat: &FinCat, caps: &Caps) -> Result<Vec<AdmissibleClass>> {
    let monos: Vec<Mor> = cat.monos().iter().map(Mor).collect();
    let start = admissible_closure(cat, &Bits::empty(cat.num_morphisms())).expect("identities are closed");
    let mut seen: HashSet<Bits> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(b) = frontier.pop() {
        for &m in &monos {
            if b.contains(m.0) {
                continue;
            }
            let mut seed = b.clone();
            seed.insert(m.0);
            if let Some(next) = admissible_closure(cat, &seed) {
                if seen.insert(next.clone()) {
                    Caps::check("max_subobjects", seen.len(), caps.max_subobjects)?;
                    frontier.push(next);
                }
            }
        }
    }
    let mut out: Vec<AdmissibleClass> = seen.into_iter().map(|arrows| AdmissibleClass { arrows }).collect();
    out.sort();
    Ok(out)
}

/// The presheaf `M(C) = 𝓜/C` of subobject classes, each represented by its
/// member with the smallest index.
#[derive(Clone, Debug)]
pub struct MPresheaf {
    reps: Vec<Vec<Mor>>,
    /// Per morphism index: position of its class in `M(cod)`, for members.
    class_of: Vec<Option<usize>>,
    presheaf: Presheaf,
}

impl MPresheaf {
    pub fn new(cat: &FinCat, class: &AdmissibleClass) -> Result<Self> {
        let mut reps: Vec<Vec<Mor>> = vec![Vec::new(); cat.num_objects()];
        let mut class_of = vec![None; cat.num_morphisms()];
        for m in class.arrows.iter().map(Mor) {
            let c = cat.cod(m);
            let pos = reps[c.0].iter().position(|&r| cat.slice_isomorphic(r, m));
            class_of[m.0] = Some(match pos {
                Some(p) => p,
                None => {
                    reps[c.0].push(m);
                    reps[c.0].len() - 1
                }
            });
        }
        let labels = reps.iter().map(|rs| rs.iter().map(|&m| cat.mor_name(m).to_string()).collect()).collect();
        let mut restrict = Vec::with_capacity(cat.num_morphisms());
        for k in cat.morphisms() {
            let mut t = Vec::new();
            for &m in &reps[cat.cod(k).0] {
                let sq = cat.try_pullback(k, m)?;
                let l = sq.leg_f;
                t.push(class_of[l.0].ok_or_else(|| {
                    Error::InvalidAdmissible(format!("pullback {} is not in the class", cat.mor_name(l)))
                })?);
            }
            restrict.push(t);
        }
        let presheaf = Presheaf::new(cat, labels, restrict)?;
        Ok(MPresheaf { reps, class_of, presheaf })
    }

    pub fn presheaf(&self) -> &Presheaf {
        &self.presheaf
    }

    pub fn reps(&self, c: Obj) -> &[Mor] {
        &self.reps[c.0]
    }

    pub fn rep(&self, c: Obj, i: usize) -> Mor {
        self.reps[c.0][i]
    }

    /// Position of the class of `m` in `M(cod m)`.
    pub fn index_of(&self, m: Mor) -> Option<usize> {
        self.class_of[m.0]
    }

    /// Subobject order `m ≤ n` in `M(C)`.
    pub fn le(&self, cat: &FinCat, c: Obj, i: usize, k: usize) -> bool {
        cat.factor_through(self.reps[c.0][i], self.reps[c.0][k]).is_some()
    }
}

/// Quantifiers between Ω and `Ω^X`. An element of `Ω^X(C)` is a subpresheaf of
/// `y(C) × X`; the pair `(f, x)` at `D` has index `i * |X(D)| + x`, where `i`
/// is the position of `f` in `hom(D, C)`.
#[derive(Clone, Debug)]
pub struct Quantifiers {
    x: Presheaf,
    products: Vec<Presheaf>,
}

impl Quantifiers {
    pub fn new(cat: &FinCat, x: Presheaf) -> Self {
        let products = cat.objects().map(|c| Presheaf::product(cat, &Presheaf::yoneda(cat, c), &x)).collect();
        Quantifiers { x, products }
    }

    pub fn x(&self) -> &Presheaf {
        &self.x
    }

    /// `y(C) × X`.
    pub fn product(&self, c: Obj) -> &Presheaf {
        &self.products[c.0]
    }

    pub fn pair(&self, cat: &FinCat, c: Obj, f: Mor, x: usize) -> usize {
        yoneda_index(cat, c, f) * self.x.size(cat.dom(f)) + x
    }

    /// `σ_X(S) = S × X`.
    pub fn sigma(&self, cat: &FinCat, c: Obj, s: &Bits) -> Subpresheaf {
        self.relation(cat, c, |f, _| s.contains(f.0))
    }

    /// The relation `{(f, x) | keep(f, x)}` inside `y(C) × X`; `keep` must
    /// describe a restriction-closed set.
    pub fn relation(&self, cat: &FinCat, c: Obj, mut keep: impl FnMut(Mor, usize) -> bool) -> Subpresheaf {
        let p = &self.products[c.0];
        let parts = cat
            .objects()
            .map(|d| {
                let mut b = Bits::empty(p.size(d));
                for &f in cat.hom(d, c) {
                    for x in 0..self.x.size(d) {
                        if keep(f, x) {
                            b.insert(self.pair(cat, c, f, x));
                        }
                    }
                }
                b
            })
            .collect();
        Subpresheaf::from_parts_unchecked(parts)
    }

    pub fn contains(&self, cat: &FinCat, c: Obj, u: &Subpresheaf, f: Mor, x: usize) -> bool {
        u.contains(cat.dom(f), self.pair(cat, c, f, x))
    }

    /// `∃_X(U) = {f | ∃x ∈ X(D_f), (f, x) ∈ U}`.
    pub fn exists(&self, cat: &FinCat, c: Obj, u: &Subpresheaf) -> Bits {
        Bits::from_indices(
            cat.num_morphisms(),
            cat.arrows_into(c)
                .iter()
                .filter(|&&f| (0..self.x.size(cat.dom(f))).any(|x| self.contains(cat, c, u, f, x)))
                .map(|f| f.0),
        )
    }

    /// `∀_X(U) = {f | ∀h into D_f, ∀x ∈ X(D_h), (f∘h, x) ∈ U}`.
    pub fn forall(&self, cat: &FinCat, c: Obj, u: &Subpresheaf) -> Bits {
        Bits::from_indices(
            cat.num_morphisms(),
            cat.arrows_into(c)
                .iter()
                .filter(|&&f| {
                    cat.arrows_into(cat.dom(f)).iter().all(|&h| {
                        let fh = cat.compose(f, h);
                        (0..self.x.size(cat.dom(h))).all(|x| self.contains(cat, c, u, fh, x))
                    })
                })
                .map(|f| f.0),
        )
    }

    /// `T_X = σ_X ∘ ∃_X`.
    pub fn t_x(&self, cat: &FinCat, c: Obj, u: &Subpresheaf) -> Subpresheaf {
        self.sigma(cat, c, &self.exists(cat, c, u))
    }

    /// `true^X_C(*) = t(C) × X`.
    pub fn true_x(&self, c: Obj) -> Subpresheaf {
        Subpresheaf::full(&self.products[c.0])
    }

    /// `U ∘ (y(f) × id)`: the relation `{(h, x) | (f∘h, x) ∈ U}` over `y(D_f) × X`.
    pub fn pull(&self, cat: &FinCat, f: Mor, u: &Subpresheaf) -> Subpresheaf {
        let c = cat.cod(f);
        self.relation(cat, cat.dom(f), |h, x| self.contains(cat, c, u, cat.compose(f, h), x))
    }

    /// The topology `∀_X ∘ σ_X`.
    pub fn forall_sigma(&self, omega: &Omega) -> OmegaEndo {
        let cat = omega.cat();
        OmegaEndo::from_fn(omega, |c, s| self.forall(cat, c, &self.sigma(cat, c, s))).expect("∀σ yields sieves")
    }

    /// `∃_X ∘ σ_X`.
    pub fn exists_sigma(&self, omega: &Omega) -> OmegaEndo {
        let cat = omega.cat();
        OmegaEndo::from_fn(omega, |c, s| self.exists(cat, c, &self.sigma(cat, c, s))).expect("∃σ yields sieves")
    }
}

/// `μ_M` together with the quantifiers over `M`.
#[derive(Clone, Debug)]
pub struct Mu {
    pub m: MPresheaf,
    pub q: Quantifiers,
    /// Per object: `μ_M(S)` keyed back to the sieve index of `S`.
    images: Vec<HashMap<Subpresheaf, usize>>,
}

impl Mu {
    pub fn new(omega: &Omega, class: &AdmissibleClass) -> Result<Self> {
        let cat = omega.cat();
        let m = MPresheaf::new(cat, class)?;
        let q = Quantifiers::new(cat, m.presheaf().clone());
        let mut mu = Mu { m, q, images: Vec::new() };
        mu.images = cat
            .objects()
            .map(|c| (0..omega.size(c)).map(|i| (mu.apply(cat, c, omega.sieve(c, i)), i)).collect())
            .collect();
        Ok(mu)
    }

    /// `μ_M(S)(D) = {(f, g) ∈ hom(D, C) × M(D) | f∘g ∈ S}`.
    pub fn apply(&self, cat: &FinCat, c: Obj, s: &Bits) -> Subpresheaf {
        self.q.relation(cat, c, |f, g| s.contains(cat.compose(f, self.m.rep(cat.dom(f), g)).0))
    }

    /// Distinct sieves have distinct images.
    pub fn is_injective(&self, omega: &Omega) -> bool {
        omega.cat().objects().all(|c| self.images[c.0].len() == omega.size(c))
    }

    /// `μ(h*(S)) = Ω^M(h)(μ(S))` for every `h` and `S`.
    pub fn is_natural(&self, omega: &Omega) -> bool {
        let cat = omega.cat();
        cat.morphisms().all(|h| {
            let (d, c) = (cat.dom(h), cat.cod(h));
            (0..omega.size(c)).all(|i| {
                let s = omega.sieve(c, i);
                self.apply(cat, d, omega.sieve(d, omega.restrict(h, i))) == self.q.pull(cat, h, &self.apply(cat, c, s))
            })
        })
    }

    /// `Char(μ_M)(U) = {f | ∃S on D_f, U ∘ (y(f) × id) = μ_M(S)}`.
    pub fn char(&self, cat: &FinCat, c: Obj, u: &Subpresheaf) -> Bits {
        Bits::from_indices(
            cat.num_morphisms(),
            cat.arrows_into(c)
                .iter()
                .filter(|&&f| self.images[cat.dom(f).0].contains_key(&self.q.pull(cat, f, u)))
                .map(|f| f.0),
        )
    }

    /// The sieve `S` with `μ_M(S) = U`, if any.
    pub fn preimage(&self, c: Obj, u: &Subpresheaf) -> Option<usize> {
        self.images[c.0].get(u).copied()
    }

    /// `j_M = ∃_M ∘ μ_M`.
    pub fn topology(&self, omega: &Omega) -> OmegaEndo {
        let cat = omega.cat();
        OmegaEndo::from_fn(omega, |c, s| self.q.exists(cat, c, &self.apply(cat, c, s))).expect("j_M yields sieves")
    }
}

/// `j_M(S) = {f | ∃g ∈ 𝓜/D_f, f∘g ∈ S}`, from the class directly.
pub fn topology_from_class(omega: &Omega, arrows: &Bits) -> Result<OmegaEndo> {
    let cat = omega.cat();
    OmegaEndo::from_fn(omega, |c, s| {
        Bits::from_indices(
            cat.num_morphisms(),
            cat.arrows_into(c)
                .iter()
                .filter(|&&f| {
                    cat.arrows_into(cat.dom(f)).iter().any(|&g| arrows.contains(g.0) && s.contains(cat.compose(f, g).0))
                })
                .map(|f| f.0),
        )
    })
}

/// `j_Sub`: the class-restricted formula with all monos.
pub fn j_sub(omega: &Omega) -> Result<OmegaEndo> {
    topology_from_class(omega, &omega.cat().monos())
}

/// `J_M(C) = {S | S ∩ 𝓜/C ≠ ∅}`.
pub fn grothendieck_from_class(omega: &Omega, arrows: &Bits) -> WeakGrothendieck {
    WeakGrothendieck::from_predicate(omega, |_, s| s.intersects(arrows))
}

/// `Ḡ(C) = {x | ∀f into C, ∃g ∈ 𝓜/D_f, F(f∘g)(x) ∈ G(D_g)}`.
pub fn class_closure(cat: &FinCat, arrows: &Bits, f: &Presheaf, g: &Subpresheaf) -> Subpresheaf {
    Subpresheaf::from_parts_unchecked(
        cat.objects()
            .map(|c| {
                Bits::from_indices(
                    f.size(c),
                    (0..f.size(c)).filter(|&x| {
                        cat.arrows_into(c).iter().all(|&k| {
                            cat.arrows_into(cat.dom(k)).iter().any(|&m| {
                                arrows.contains(m.0) && g.contains(cat.dom(m), f.restrict(cat.compose(k, m), x))
                            })
                        })
                    }),
                )
            })
            .collect(),
    )
}

/// `[(n, f)]`: defined on the subobject `n: A ↣ C`, acting as `f: A -> B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartialMap {
    pub domain: Mor,
    pub map: Mor,
}

impl PartialMap {
    pub fn whole(f: Mor, cat: &FinCat) -> Self {
        PartialMap { domain: cat.id(cat.dom(f)), map: f }
    }

    pub fn source(&self, cat: &FinCat) -> Obj {
        cat.cod(self.domain)
    }

    pub fn target(&self, cat: &FinCat) -> Obj {
        cat.cod(self.map)
    }

    /// `[(n, g)] ∘ [(m, f)] = [(m ∘ f⁻¹(n), g ∘ n⁻¹(f))]`.
    pub fn then(&self, cat: &FinCat, next: &PartialMap) -> Result<PartialMap> {
        let spans = |p: &PartialMap| cat.dom(p.domain) == cat.dom(p.map);
        if !spans(self) || !spans(next) || self.target(cat) != next.source(cat) {
            return Err(Error::NotComposable(format!(
                "({}, {}) then ({}, {})",
                cat.mor_name(self.domain),
                cat.mor_name(self.map),
                cat.mor_name(next.domain),
                cat.mor_name(next.map)
            )));
        }
        let sq = cat.try_pullback(self.map, next.domain)?;
        Ok(PartialMap { domain: cat.compose(self.domain, sq.leg_f), map: cat.compose(next.map, sq.leg_g) })
    }

    /// Equal up to an isomorphism of domains commuting with both components.
    pub fn equivalent(&self, cat: &FinCat, other: &PartialMap) -> bool {
        let (a, b) = (cat.dom(self.domain), cat.dom(other.domain));
        cat.cod(self.domain) == cat.cod(other.domain)
            && cat.cod(self.map) == cat.cod(other.map)
            && cat.hom(a, b).iter().any(|&t| {
                cat.is_iso(t) && cat.compose(other.domain, t) == self.domain && cat.compose(other.map, t) == self.map
            })
    }

    pub fn format(&self, cat: &FinCat) -> String {
        format!("[({}, {})]", cat.mor_name(self.domain), cat.mor_name(self.map))
    }
}

fn push_unique(cat: &FinCat, out: &mut Vec<PartialMap>, p: PartialMap) {
    if !out.iter().any(|q| q.equivalent(cat, &p)) {
        out.push(p);
    }
}

/// `P_S = {[(m, f∘m)] | m ∈ 𝓜/D_f, f∘m ∈ S}`, up to equivalence.
pub fn partial_maps_in(cat: &FinCat, arrows: &Bits, c: Obj, s: &Bits) -> Vec<PartialMap> {
    let mut out = Vec::new();
    for &f in cat.arrows_into(c) {
        for &m in cat.arrows_into(cat.dom(f)) {
            let fm = cat.compose(f, m);
            if arrows.contains(m.0) && s.contains(fm.0) {
                push_unique(cat, &mut out, PartialMap { domain: m, map: fm });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartialMapCategoryCheck {
    pub arrows: usize,
    pub identities: bool,
    pub closed: bool,
    pub associative: bool,
    pub sieve_classes_closed: bool,
    pub witnesses: Vec<String>,
}

impl PartialMapCategoryCheck {
    pub fn pass(&self) -> bool {
        self.identities && self.closed && self.associative && self.sieve_classes_closed
    }
}

/// Checks that `⋃_C P_{t(C)}` is a category under partial-map composition and
/// that each `P_S` is closed under composition with `P_{t}` on the left.
pub fn partial_map_category_check(omega: &Omega, arrows: &Bits) -> Result<PartialMapCategoryCheck> {
    let cat = omega.cat();
    let mut all: Vec<PartialMap> = Vec::new();
    for c in cat.objects() {
        for p in partial_maps_in(cat, arrows, c, &cat.into_bits(c)) {
            push_unique(cat, &mut all, p);
        }
    }
    let mut r = PartialMapCategoryCheck {
        arrows: all.len(),
        identities: true,
        closed: true,
        associative: true,
        sieve_classes_closed: true,
        witnesses: Vec::new(),
    };
    let member = |p: &PartialMap| all.iter().any(|q| q.equivalent(cat, p));
    for c in cat.objects() {
        let id = PartialMap { domain: cat.id(c), map: cat.id(c) };
        if !member(&id) {
            r.identities = false;
            r.witnesses.push(format!("missing {}", id.format(cat)));
        }
    }
    for p in &all {
        for q in &all {
            if p.target(cat) != q.source(cat) {
                continue;
            }
            let pq = p.then(cat, q)?;
            if !member(&pq) {
                r.closed = false;
                r.witnesses.push(format!("{} then {} leaves the class", p.format(cat), q.format(cat)));
            }
            for s in &all {
                if q.target(cat) != s.source(cat) {
                    continue;
                }
                let left = pq.then(cat, s)?;
                let right = p.then(cat, &q.then(cat, s)?)?;
                if !left.equivalent(cat, &right) {
                    r.associative = false;
                    r.witnesses.push(format!(
                        "({} {} {}) not associative",
                        p.format(cat),
                        q.format(cat),
                        s.format(cat)
                    ));
                }
            }
        }
    }
    // [(m, fm)] ∈ P_S and any [(n, gn)] before it: the composite lands in P_S
    for c in cat.objects() {
        for s in omega.sieves(c) {
            let ps = partial_maps_in(cat, arrows, c, s);
            for q in &ps {
                for p in all.iter().filter(|p| p.target(cat) == q.source(cat)) {
                    let pq = p.then(cat, q)?;
                    if !is_in_p_s(cat, arrows, s, &pq) {
                        r.sieve_classes_closed = false;
                        r.witnesses.push(format!(
                            "{} then {} leaves P_{}",
                            p.format(cat),
                            q.format(cat),
                            crate::omega::format_sieve(cat, s)
                        ));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Whether `[(m, k)]` has the shape `[(m, f∘m)]` with `m ∈ 𝓜` and `k ∈ S`.
fn is_in_p_s(cat: &FinCat, arrows: &Bits, s: &Bits, p: &PartialMap) -> bool {
    arrows.contains(p.domain.0)
        && s.contains(p.map.0)
        && cat.hom(p.source(cat), p.target(cat)).iter().any(|&f| cat.compose(f, p.domain) == p.map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::omega::{check_weak_topology, closure_from_j, double_negation, grothendieck_from_j, parse_sieve};

    fn caps() -> Caps {
        Caps::default()
    }

    fn l3_class(cat: &FinCat) -> AdmissibleClass {
        AdmissibleClass::from_names(cat, &fixtures::L3_CLASS).unwrap()
    }

    #[test]
    fn validation() {
        let l3 = fixtures::l3();
        l3_class(&l3);
        AdmissibleClass::all_monos(&l3).unwrap();
        for (_, cat) in fixtures::zoo() {
            let ids = AdmissibleClass::identities(&cat);
            assert!(AdmissibleClass::validate(&cat, ids.arrows()).is_valid());
            if cat.is_finitely_complete() {
                AdmissibleClass::all_monos(&cat).unwrap();
            }
        }
        // Γ lacks the pullback of (s, t)
        let g = fixtures::gamma();
        let r = AdmissibleClass::validate(&g, &g.monos());
        assert!(r.monic && r.identities && r.composition && !r.pullback);
        // MON_E: e is not monic
        let m = fixtures::mon_e();
        assert!(!AdmissibleClass::validate(&m, &Bits::full(m.num_morphisms())).monic);
        // missing identity
        let no_ids = Bits::from_indices(l3.num_morphisms(), [l3.morphism("x<=y").unwrap().0]);
        assert!(!AdmissibleClass::validate(&l3, &no_ids).identities);
    }

    #[test]
    fn enumeration_matches_subsets() {
        for (name, cat) in fixtures::zoo() {
            let found = enumerate_admissible_classes(&cat, &caps()).unwrap();
            let monos: Vec<usize> = cat.monos().iter().collect();
            let mut brute = Vec::new();
            for mask in 0u64..(1 << monos.len()) {
                let b = Bits::from_indices(
                    cat.num_morphisms(),
                    monos.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &m)| m),
                );
                if AdmissibleClass::validate(&cat, &b).is_valid() {
                    brute.push(AdmissibleClass { arrows: b });
                }
            }
            brute.sort();
            assert_eq!(found, brute, "{name}");
        }
    }

    #[test]
    fn m_presheaf_listing() {
        let l3 = fixtures::l3();
        let m = MPresheaf::new(&l3, &l3_class(&l3)).unwrap();
        let at = |o: &str| m.presheaf().labels()[l3.object(o).unwrap().0].clone();
        assert_eq!(at("y"), vec!["id_y", "x<=y"]);
        assert_eq!(at("1"), vec!["id_1"]);
        assert_eq!(at("x"), vec!["id_x"]);
        let all = MPresheaf::new(&l3, &AdmissibleClass::all_monos(&l3).unwrap()).unwrap();
        assert_eq!(all.presheaf().labels()[l3.object("1").unwrap().0], vec!["id_1", "x<=1", "y<=1"]);
        for (_, cat) in fixtures::zoo() {
            let ids = MPresheaf::new(&cat, &AdmissibleClass::identities(&cat)).unwrap();
            for c in cat.objects() {
                assert_eq!(ids.reps(c), &[cat.id(c)]);
            }
        }
    }

    #[test]
    fn quantifier_laws() {
        for (name, cat) in fixtures::zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            let mut xs = vec![Presheaf::terminal(&cat), Presheaf::empty(&cat)];
            xs.extend(cat.objects().map(|c| Presheaf::yoneda(&cat, c)));
            for x in xs {
                let q = Quantifiers::new(&cat, x.clone());
                let fs = q.forall_sigma(&om);
                let fsr = check_weak_topology(&om, &fs);
                assert!(fsr.topology, "{name}: {fsr:?}");
                let es = q.exists_sigma(&om);
                for c in cat.objects() {
                    for (i, s) in om.sieves(c).iter().enumerate() {
                        let expect: Vec<usize> = s.iter().filter(|&f| x.size(cat.dom(Mor(f))) > 0).collect();
                        assert_eq!(om.sieve(c, es.at(c, i)).iter().collect::<Vec<_>>(), expect);
                    }
                    let us = q.product(c).enumerate_subpresheaves(&cat, &caps()).unwrap();
                    for u in &us {
                        let ex = q.exists(&cat, c, u);
                        let fa = q.forall(&cat, c, u);
                        for s in om.sieves(c) {
                            let sig = q.sigma(&cat, c, s);
                            assert_eq!(ex.is_subset(s), u.is_subset(&sig), "{name}");
                            assert_eq!(sig.is_subset(u), s.is_subset(&fa), "{name}");
                        }
                        let t = q.t_x(&cat, c, u);
                        assert_eq!(q.t_x(&cat, c, &t), t);
                    }
                }
            }
        }
    }

    #[test]
    fn mu_and_j_m() {
        for (name, cat) in fixtures::zoo() {
            if !cat.is_finitely_complete() {
                continue;
            }
            let om = Omega::new(&cat, &caps()).unwrap();
            let nn = double_negation(&om);
            let jsub = j_sub(&om).unwrap();
            for class in enumerate_admissible_classes(&cat, &caps()).unwrap() {
                let mu = Mu::new(&om, &class).unwrap();
                assert!(mu.is_natural(&om) && mu.is_injective(&om), "{name}");
                assert_eq!(mu.q.exists_sigma(&om), OmegaEndo::identity(&om));
                let j = mu.topology(&om);
                assert_eq!(j, topology_from_class(&om, class.arrows()).unwrap());
                assert!(check_weak_topology(&om, &j).topology);
                assert_eq!(grothendieck_from_j(&om, &j), grothendieck_from_class(&om, class.arrows()));
                assert!(j.le(&om, &jsub) && jsub.le(&om, &nn));
                for c in cat.objects() {
                    assert_eq!(mu.q.t_x(&cat, c, &mu.q.true_x(c)), mu.q.true_x(c));
                    for s in om.sieves(c) {
                        let m = mu.apply(&cat, c, s);
                        assert!(mu.q.sigma(&cat, c, s).is_subset(&m));
                        assert!(s.is_subset(&mu.q.exists(&cat, c, &m)));
                        assert!(mu.char(&cat, c, &m).contains(cat.id(c).0));
                    }
                    assert_eq!(mu.char(&cat, c, &mu.q.true_x(c)), cat.into_bits(c));
                }
                let y: Vec<Presheaf> = cat.objects().map(|c| Presheaf::yoneda(&cat, c)).collect();
                for f in &y {
                    for g in f.enumerate_subpresheaves(&cat, &caps()).unwrap() {
                        assert_eq!(class_closure(&cat, class.arrows(), f, &g), closure_from_j(&om, &j, f, &g));
                    }
                }
            }
            if name == "l3" {
                assert_eq!(jsub, nn);
            }
        }
    }

    #[test]
    fn l3_examples() {
        let l3 = fixtures::l3();
        let om = Omega::new(&l3, &caps()).unwrap();
        let class = l3_class(&l3);
        let mu = Mu::new(&om, &class).unwrap();
        let one = l3.object("1").unwrap();
        let y = l3.object("y").unwrap();
        let s = parse_sieve(&l3, one, &["x<=1"]).unwrap();
        let rel = mu.apply(&l3, one, &s);
        let pair =
            mu.q.pair(&l3, one, l3.morphism("y<=1").unwrap(), mu.m.index_of(l3.morphism("x<=y").unwrap()).unwrap());
        assert!(rel.contains(y, pair));
        let j = mu.topology(&om);
        assert_eq!(j.apply(&om, one, &s), &parse_sieve(&l3, one, &["x<=1", "y<=1"]).unwrap());
        assert_eq!(
            topology_from_class(&om, AdmissibleClass::identities(&l3).arrows()).unwrap(),
            OmegaEndo::identity(&om)
        );
        let top = l3.into_bits(one);
        assert!(top.is_subset(&mu.char(&l3, one, &mu.q.sigma(&l3, one, &top))));
    }

    #[test]
    fn partial_maps() {
        let l3 = fixtures::l3();
        let om = Omega::new(&l3, &caps()).unwrap();
        let class = l3_class(&l3);
        let m = |n: &str| l3.morphism(n).unwrap();
        let r = partial_map_category_check(&om, class.arrows()).unwrap();
        assert!(r.pass(), "{r:?}");
        let y = l3.object("y").unwrap();
        let idy = PartialMap { domain: m("id_y"), map: m("id_y") };
        assert!(partial_maps_in(&l3, class.arrows(), y, &l3.into_bits(y)).contains(&idy));
        // [(x<=y, x<=y)] then [(id_y, y<=1)]
        let p = PartialMap { domain: m("x<=y"), map: m("x<=y") };
        let q = PartialMap::whole(m("y<=1"), &l3);
        let pq = p.then(&l3, &q).unwrap();
        assert_eq!(pq, PartialMap { domain: m("x<=y"), map: m("x<=1") });
        // [(id_y, id_y)] then [(x<=y, x<=y)] restricts the domain
        let r2 = idy.then(&l3, &p).unwrap();
        assert_eq!(r2, p);
        let w1 = PartialMap::whole(m("x<=y"), &l3);
        assert_eq!(w1.then(&l3, &q).unwrap(), PartialMap::whole(m("x<=1"), &l3));
        assert!(matches!(q.then(&l3, &p), Err(Error::NotComposable(_))));
        for (_, cat) in fixtures::zoo() {
            if cat.is_finitely_complete() {
                let om = Omega::new(&cat, &caps()).unwrap();
                for class in enumerate_admissible_classes(&cat, &caps()).unwrap() {
                    assert!(partial_map_category_check(&om, class.arrows()).unwrap().pass());
                }
            }
        }
    }
}
