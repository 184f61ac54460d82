//! Sieves, the subobject classifier and endomaps of it.
//!
//! A sieve on `C` is a [`Bits`] over the global morphism index of the
//! category whose members all have codomain `C`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Caps, Error, Result};
use crate::fincat::{FinCat, Mor, Obj};
use crate::presheaf::{Presheaf, Subpresheaf};

/// Whether `arrows` is a sieve on `c`.
pub fn is_sieve(cat: &FinCat, c: Obj, arrows: &Bits) -> bool {
    arrows.iter().all(|i| {
        let f = Mor(i);
        cat.cod(f) == c && cat.arrows_into(cat.dom(f)).iter().all(|&g| arrows.contains(cat.compose(f, g).0))
    })
}

/// Smallest sieve on `c` containing the given arrows.
pub fn generated_sieve(cat: &FinCat, c: Obj, arrows: impl IntoIterator<Item = Mor>) -> Bits {
    let mut s = Bits::empty(cat.num_morphisms());
    for f in arrows {
        debug_assert_eq!(cat.cod(f), c);
        for &g in cat.arrows_into(cat.dom(f)) {
            s.insert(cat.compose(f, g).0);
        }
    }
    s
}

/// `h*(S) = {g | h ∘ g ∈ S}`, a sieve on `dom h`.
pub fn pullback_sieve(cat: &FinCat, h: Mor, s: &Bits) -> Bits {
    Bits::from_indices(
        cat.num_morphisms(),
        cat.arrows_into(cat.dom(h)).iter().filter(|&&g| s.contains(cat.compose(h, g).0)).map(|g| g.0),
    )
}

pub fn sieve_names(cat: &FinCat, s: &Bits) -> Vec<String> {
    s.iter().map(|i| cat.mor_name(Mor(i)).to_string()).collect()
}

pub fn format_sieve(cat: &FinCat, s: &Bits) -> String {
    format!("{{{}}}", sieve_names(cat, s).join(", "))
}

/// Parses a list of morphism names into a sieve on `c`.
pub fn parse_sieve<S: AsRef<str>>(cat: &FinCat, c: Obj, names: &[S]) -> Result<Bits> {
    let mut s = Bits::empty(cat.num_morphisms());
    for n in names {
        let f = cat.morphism(n.as_ref())?;
        if cat.cod(f) != c {
            return Err(Error::NotASieve {
                object: cat.obj_name(c).into(),
                detail: format!("{} does not have codomain {}", n.as_ref(), cat.obj_name(c)),
            });
        }
        s.insert(f.0);
    }
    if !is_sieve(cat, c, &s) {
        return Err(Error::NotASieve {
            object: cat.obj_name(c).into(),
            detail: "not closed under precomposition".into(),
        });
    }
    Ok(s)
}

/// The subobject classifier: every sieve on every object, with restriction
/// tables. Sieves on each object are sorted ascending.
#[derive(Clone, Debug)]
pub struct Omega<'c> {
    cat: &'c FinCat,
    sieves: Vec<Vec<Bits>>,
    index: Vec<HashMap<Bits, usize>>,
    /// Per `h: D -> C`, sieve index on `C` to sieve index on `D`.
    restrict: Vec<Vec<usize>>,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl<'c> Omega<'c> {
    pub fn new(cat: &'c FinCat, caps: &Caps) -> Result<Self> {
        let n = cat.num_morphisms();
        let mut sieves = Vec::with_capacity(cat.num_objects());
        for c in cat.objects() {
            let principal: Vec<Bits> = cat.arrows_into(c).iter().map(|&f| generated_sieve(cat, c, [f])).collect();
            let start = Bits::empty(n);
            let mut seen: HashSet<Bits> = HashSet::from([start.clone()]);
            let mut frontier = vec![start];
            while let Some(s) = frontier.pop() {
                for p in &principal {
                    if p.is_subset(&s) {
                        continue;
                    }
                    let u = s.union(p);
                    if seen.insert(u.clone()) {
                        Caps::check("max_sieves_per_object", seen.len(), caps.max_sieves_per_object)?;
                        frontier.push(u);
                    }
                }
            }
            let mut all: Vec<Bits> = seen.into_iter().collect();
            all.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
            sieves.push(all);
        }
        let index: Vec<HashMap<Bits, usize>> =
            sieves.iter().map(|v: &Vec<Bits>| v.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        let restrict = cat
            .morphisms()
            .map(|h| {
                let d = cat.dom(h).0;
                sieves[cat.cod(h).0].iter().map(|s| index[d][&pullback_sieve(cat, h, s)]).collect()
            })
            .collect();
        let top = cat.objects().map(|c| index[c.0][&cat.into_bits(c)]).collect();
        let bottom = cat.objects().map(|c| index[c.0][&Bits::empty(n)]).collect();
        Ok(Omega { cat, sieves, index, restrict, top, bottom })
    }

    pub fn cat(&self) -> &'c FinCat {
        self.cat
    }

    pub fn sieves(&self, c: Obj) -> &[Bits] {
        &self.sieves[c.0]
    }

    pub fn size(&self, c: Obj) -> usize {
        self.sieves[c.0].len()
    }

    pub fn sieve(&self, c: Obj, i: usize) -> &Bits {
        &self.sieves[c.0][i]
    }

    /// Index of a sieve on `c`, if `s` is one.
    pub fn index_of(&self, c: Obj, s: &Bits) -> Option<usize> {
        self.index[c.0].get(s).copied()
    }

    pub fn top(&self, c: Obj) -> usize {
        self.top[c.0]
    }

    pub fn bottom(&self, c: Obj) -> usize {
        self.bottom[c.0]
    }

    /// `h*` on sieve indices.
    #[inline]
    pub fn restrict(&self, h: Mor, i: usize) -> usize {
        self.restrict[h.0][i]
    }

    pub fn meet(&self, c: Obj, i: usize, k: usize) -> usize {
        self.index[c.0][&self.sieves[c.0][i].intersection(&self.sieves[c.0][k])]
    }

    pub fn join(&self, c: Obj, i: usize, k: usize) -> usize {
        self.index[c.0][&self.sieves[c.0][i].union(&self.sieves[c.0][k])]
    }

    pub fn le(&self, c: Obj, i: usize, k: usize) -> bool {
        self.sieves[c.0][i].is_subset(&self.sieves[c.0][k])
    }

    pub fn format(&self, c: Obj, i: usize) -> String {
        format_sieve(self.cat, &self.sieves[c.0][i])
    }

    /// Ω as an ordinary presheaf; elements are sieve indices.
    pub fn as_presheaf(&self) -> Presheaf {
        let labels = self.cat.objects().map(|c| (0..self.size(c)).map(|i| self.format(c, i)).collect()).collect();
        Presheaf::new(self.cat, labels, self.restrict.clone()).expect("Ω is a presheaf")
    }
}

/// A natural endomap `j` of Ω, stored as sieve index tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaEndo {
    maps: Vec<Vec<usize>>,
}

impl OmegaEndo {
    /// Tabulates `f` on every sieve; fails if some value is not a sieve.
    pub fn from_fn(omega: &Omega, mut f: impl FnMut(Obj, &Bits) -> Bits) -> Result<Self> {
        let cat = omega.cat();
        let mut maps = Vec::with_capacity(cat.num_objects());
        for c in cat.objects() {
            let mut row = Vec::with_capacity(omega.size(c));
            for s in omega.sieves(c) {
                let v = f(c, s);
                let i = omega.index_of(c, &v).ok_or_else(|| Error::NotASieve {
                    object: cat.obj_name(c).into(),
                    detail: format!("{} maps {} to {}", "endomap", format_sieve(cat, s), format_sieve(cat, &v)),
                })?;
                row.push(i);
            }
            maps.push(row);
        }
        Ok(OmegaEndo { maps })
    }

    pub fn identity(omega: &Omega) -> Self {
        OmegaEndo { maps: omega.cat().objects().map(|c| (0..omega.size(c)).collect()).collect() }
    }

    /// `true ∘ !`.
    pub fn constant_true(omega: &Omega) -> Self {
        OmegaEndo { maps: omega.cat().objects().map(|c| vec![omega.top(c); omega.size(c)]).collect() }
    }

    #[inline]
    pub fn at(&self, c: Obj, i: usize) -> usize {
        self.maps[c.0][i]
    }

    pub fn apply<'a>(&self, omega: &'a Omega, c: Obj, s: &Bits) -> &'a Bits {
        let i = omega.index_of(c, s).expect("argument is a sieve");
        omega.sieve(c, self.maps[c.0][i])
    }

    pub fn compose(&self, other: &OmegaEndo) -> OmegaEndo {
        OmegaEndo { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| b.iter().map(|&i| a[i]).collect()).collect() }
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, omega: &Omega, other: &OmegaEndo) -> bool {
        omega.cat().objects().all(|c| (0..omega.size(c)).all(|i| omega.le(c, self.at(c, i), other.at(c, i))))
    }

    /// First failing naturality square `h* ∘ j_C = j_D ∘ h*`, if any.
    pub fn naturality_failure(&self, omega: &Omega) -> Option<(Mor, usize)> {
        let cat = omega.cat();
        for h in cat.morphisms() {
            let (d, c) = (cat.dom(h), cat.cod(h));
            for i in 0..omega.size(c) {
                if omega.restrict(h, self.at(c, i)) != self.at(d, omega.restrict(h, i)) {
                    return Some((h, i));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TopologyCheck {
    pub natural: bool,
    pub preserves_true: bool,
    pub weak: bool,
    pub productive: bool,
    pub idempotent: bool,
    pub monotone: bool,
    pub topology: bool,
    /// One replayable counterexample per failing flag.
    pub witnesses: Vec<String>,
}

pub fn check_weak_topology(omega: &Omega, j: &OmegaEndo) -> TopologyCheck {
    let cat = omega.cat();
    let mut r = TopologyCheck {
        natural: true,
        preserves_true: true,
        weak: true,
        productive: true,
        idempotent: true,
        monotone: true,
        ..Default::default()
    };
    if let Some((h, i)) = j.naturality_failure(omega) {
        r.natural = false;
        r.witnesses.push(format!("natural: fails along {} at {}", cat.mor_name(h), omega.format(cat.cod(h), i)));
    }
    let mut lax = true;
    for c in cat.objects() {
        let top = omega.top(c);
        if r.preserves_true && j.at(c, top) != top {
            r.preserves_true = false;
            r.witnesses.push(format!("true: j({}) ≠ t({})", omega.format(c, top), cat.obj_name(c)));
        }
        for s in 0..omega.size(c) {
            if r.idempotent && j.at(c, j.at(c, s)) != j.at(c, s) {
                r.idempotent = false;
                r.witnesses.push(format!("idempotent: fails at {} on {}", omega.format(c, s), cat.obj_name(c)));
            }
            for t in 0..omega.size(c) {
                let lhs = j.at(c, omega.meet(c, s, t));
                let rhs = omega.meet(c, j.at(c, s), j.at(c, t));
                if lax && !omega.le(c, lhs, rhs) {
                    lax = false;
                    r.witnesses.push(format!(
                        "meet: j(S ∧ T) ⊄ j(S) ∧ j(T) for S = {}, T = {}",
                        omega.format(c, s),
                        omega.format(c, t)
                    ));
                }
                if r.productive && lhs != rhs {
                    r.productive = false;
                    r.witnesses.push(format!(
                        "productive: j(S ∧ T) ≠ j(S) ∧ j(T) for S = {}, T = {}",
                        omega.format(c, s),
                        omega.format(c, t)
                    ));
                }
                if r.monotone && omega.le(c, s, t) && !omega.le(c, j.at(c, s), j.at(c, t)) {
                    r.monotone = false;
                    r.witnesses.push(format!("monotone: fails for {} ⊆ {}", omega.format(c, s), omega.format(c, t)));
                }
            }
        }
    }
    r.weak = r.natural && r.preserves_true && lax;
    r.productive &= r.weak;
    r.topology = r.weak && r.productive && r.idempotent;
    r
}

/// Closure of `G ≤ F` induced by `j`: `x` is in the closure at `C` when
/// `j_C({f | F(f)(x) ∈ G}) = t(C)`.
pub fn closure_from_j(omega: &Omega, j: &OmegaEndo, f: &Presheaf, g: &Subpresheaf) -> Subpresheaf {
    let cat = omega.cat();
    let parts = cat
        .objects()
        .map(|c| {
            Bits::from_indices(
                f.size(c),
                (0..f.size(c)).filter(|&x| {
                    let s = element_sieve(cat, f, g, c, x);
                    let i = omega.index_of(c, &s).expect("element sieve");
                    j.at(c, i) == omega.top(c)
                }),
            )
        })
        .collect();
    Subpresheaf::from_parts_unchecked(parts)
}

/// `{f: D -> C | F(f)(x) ∈ G(D)}`, the characteristic sieve of `x` for `G`.
pub fn element_sieve(cat: &FinCat, f: &Presheaf, g: &Subpresheaf, c: Obj, x: usize) -> Bits {
    Bits::from_indices(
        cat.num_morphisms(),
        cat.arrows_into(c).iter().filter(|&&h| g.contains(cat.dom(h), f.restrict(h, x))).map(|h| h.0),
    )
}

/// Per object, a set of covering sieves (as a bitset over sieve indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakGrothendieck {
    covers: Vec<Bits>,
}

impl WeakGrothendieck {
    pub fn from_predicate(omega: &Omega, mut covers: impl FnMut(Obj, &Bits) -> bool) -> Self {
        WeakGrothendieck {
            covers: omega
                .cat()
                .objects()
                .map(|c| {
                    Bits::from_indices(
                        omega.size(c),
                        omega.sieves(c).iter().enumerate().filter(|(_, s)| covers(c, s)).map(|(i, _)| i),
                    )
                })
                .collect(),
        }
    }

    pub fn covers(&self, c: Obj, i: usize) -> bool {
        self.covers[c.0].contains(i)
    }

    pub fn cover_indices(&self, c: Obj) -> impl Iterator<Item = usize> + '_ {
        self.covers[c.0].iter()
    }

    pub fn count(&self, c: Obj) -> usize {
        self.covers[c.0].count()
    }

    pub fn contains_top(&self, omega: &Omega) -> bool {
        omega.cat().objects().all(|c| self.covers(c, omega.top(c)))
    }

    /// Covers are stable under every `h*`.
    pub fn is_stable(&self, omega: &Omega) -> bool {
        let cat = omega.cat();
        cat.morphisms().all(|h| {
            let (d, c) = (cat.dom(h), cat.cod(h));
            self.cover_indices(c).all(|i| self.covers(d, omega.restrict(h, i)))
        })
    }

    pub fn format(&self, omega: &Omega, c: Obj) -> Vec<String> {
        self.cover_indices(c).map(|i| omega.format(c, i)).collect()
    }
}

/// `J(C) = {S | j_C(S) = t(C)}`.
pub fn grothendieck_from_j(omega: &Omega, j: &OmegaEndo) -> WeakGrothendieck {
    WeakGrothendieck {
        covers: omega
            .cat()
            .objects()
            .map(|c| Bits::from_indices(omega.size(c), (0..omega.size(c)).filter(|&i| j.at(c, i) == omega.top(c))))
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Both dense and closed, i.e. the whole presheaf.
    DenseClosed,
    Dense,
    Closed,
    Neither,
}

pub fn classify_subobject(omega: &Omega, j: &OmegaEndo, f: &Presheaf, g: &Subpresheaf) -> Classification {
    let cl = closure_from_j(omega, j, f, g);
    let dense = cl == Subpresheaf::full(f);
    let closed = &cl == g;
    match (dense, closed) {
        (true, true) => Classification::DenseClosed,
        (true, false) => Classification::Dense,
        (false, true) => Classification::Closed,
        (false, false) => Classification::Neither,
    }
}

/// `¬¬(S) = {f | ∀g ∃h, f∘g∘h ∈ S}`.
pub fn double_negation(omega: &Omega) -> OmegaEndo {
    let cat = omega.cat();
    OmegaEndo::from_fn(omega, |c, s| {
        Bits::from_indices(
            cat.num_morphisms(),
            cat.arrows_into(c)
                .iter()
                .filter(|&&f| {
                    cat.arrows_into(cat.dom(f)).iter().all(|&g| {
                        let fg = cat.compose(f, g);
                        cat.arrows_into(cat.dom(g)).iter().any(|&h| s.contains(cat.compose(fg, h).0))
                    })
                })
                .map(|f| f.0),
        )
    })
    .expect("double negation yields sieves")
}

/// `{f | f*(S) ≠ ∅}`; a sieve only under the right Ore condition.
pub fn double_negation_atomic(omega: &Omega) -> Result<OmegaEndo> {
    let cat = omega.cat();
    OmegaEndo::from_fn(omega, |c, s| {
        Bits::from_indices(
            cat.num_morphisms(),
            cat.arrows_into(c)
                .iter()
                .filter(|&&f| cat.arrows_into(cat.dom(f)).iter().any(|&g| s.contains(cat.compose(f, g).0)))
                .map(|f| f.0),
        )
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SheafStatus {
    pub separated: bool,
    pub sheaf: bool,
}

/// Matching-family test of `F` against every cover of `J`.
pub fn sheaf_check(omega: &Omega, f: &Presheaf, jt: &WeakGrothendieck) -> SheafStatus {
    let cat = omega.cat();
    let mut status = SheafStatus { separated: true, sheaf: true };
    for c in cat.objects() {
        for i in jt.cover_indices(c) {
            let s = omega.sieve(c, i);
            let arrows: Vec<Mor> = s.iter().map(Mor).collect();
            // canonical map x |-> (F(f)(x))_f
            let images: HashSet<Vec<usize>> =
                (0..f.size(c)).map(|x| arrows.iter().map(|&a| f.restrict(a, x)).collect()).collect();
            if images.len() < f.size(c) {
                status.separated = false;
                status.sheaf = false;
                return status;
            }
            let families = count_matching_families(cat, f, &arrows, f.size(c) + 1);
            if families != images.len() {
                status.sheaf = false;
            }
        }
    }
    status
}

/// Number of matching families for `F` over the sieve given as a list of
/// arrows, counting at most `limit`.
pub fn count_matching_families(cat: &FinCat, f: &Presheaf, arrows: &[Mor], limit: usize) -> usize {
    let pos: HashMap<Mor, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut values: Vec<Option<usize>> = vec![None; arrows.len()];
    fn ok(
        cat: &FinCat,
        f: &Presheaf,
        arrows: &[Mor],
        pos: &HashMap<Mor, usize>,
        values: &[Option<usize>],
        i: usize,
    ) -> bool {
        let a = arrows[i];
        let x = values[i].unwrap();
        for &g in cat.arrows_into(cat.dom(a)) {
            if let Some(&k) = pos.get(&cat.compose(a, g)) {
                if let Some(y) = values[k] {
                    if y != f.restrict(g, x) {
                        return false;
                    }
                }
            }
        }
        for (k, &b) in arrows.iter().enumerate() {
            if let Some(y) = values[k] {
                for &g in cat.hom(cat.dom(a), cat.dom(b)) {
                    if cat.compose(b, g) == a && f.restrict(g, y) != x {
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
        f: &Presheaf,
        arrows: &[Mor],
        pos: &HashMap<Mor, usize>,
        values: &mut Vec<Option<usize>>,
        i: usize,
        count: &mut usize,
        limit: usize,
    ) {
        if *count >= limit {
            return;
        }
        if i == arrows.len() {
            *count += 1;
            return;
        }
        for x in 0..f.size(cat.dom(arrows[i])) {
            values[i] = Some(x);
            if ok(cat, f, arrows, pos, values, i) {
                go(cat, f, arrows, pos, values, i + 1, count, limit);
            }
        }
        values[i] = None;
    }
    let mut count = 0;
    go(cat, f, arrows, &pos, &mut values, 0, &mut count, limit);
    count
}

/// `Ω_j`: the `j`-closed sieves, as a subpresheaf of [`Omega::as_presheaf`].
pub fn omega_j(omega: &Omega, j: &OmegaEndo) -> Subpresheaf {
    let cat = omega.cat();
    Subpresheaf::from_parts_unchecked(
        cat.objects()
            .map(|c| Bits::from_indices(omega.size(c), (0..omega.size(c)).filter(|&i| j.at(c, i) == i)))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeMorganEntry {
    pub name: String,
    pub sheaf: bool,
    pub subobjects: usize,
    pub pass: bool,
    /// A subpresheaf on which the law fails, listed per object.
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeMorganReport {
    pub entries: Vec<DeMorganEntry>,
    pub pass: bool,
}

/// Checks `cl(cl(¬G) ∨ cl(¬cl(¬G))) = F` for every subpresheaf `G` of every
/// candidate that is a sheaf for `j`. Non-sheaves are listed and skipped.
pub fn de_morgan_check(
    omega: &Omega,
    j: &OmegaEndo,
    candidates: &[(String, Presheaf)],
    caps: &Caps,
) -> Result<DeMorganReport> {
    let cat = omega.cat();
    let jt = grothendieck_from_j(omega, j);
    let mut entries = Vec::new();
    for (name, f) in candidates {
        if !sheaf_check(omega, f, &jt).sheaf {
            entries.push(DeMorganEntry { name: name.clone(), sheaf: false, subobjects: 0, pass: true, witness: None });
            continue;
        }
        let subs = f.enumerate_subpresheaves(cat, caps)?;
        let full = Subpresheaf::full(f);
        let cl = |g: &Subpresheaf| closure_from_j(omega, j, f, g);
        let mut witness = None;
        for g in &subs {
            let a = cl(&f.negation(cat, g)?);
            let b = cl(&f.negation(cat, &a)?);
            if cl(&a.join(&b)) != full {
                witness =
                    Some(cat.objects().map(|c| g.at(c).iter().map(|x| f.label(c, x).to_string()).collect()).collect());
                break;
            }
        }
        entries.push(DeMorganEntry {
            name: name.clone(),
            sheaf: true,
            subobjects: subs.len(),
            pass: witness.is_none(),
            witness,
        });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(DeMorganReport { entries, pass })
}

/// Representables, Ω, `Ω_j`, the terminal presheaf and binary products of
/// representables, keeping those within the element cap.
pub fn curated_candidates(omega: &Omega, j: &OmegaEndo, caps: &Caps) -> Vec<(String, Presheaf)> {
    let cat = omega.cat();
    let mut out: Vec<(String, Presheaf)> = Vec::new();
    let ys: Vec<(String, Presheaf)> =
        cat.objects().map(|c| (format!("y({})", cat.obj_name(c)), Presheaf::yoneda(cat, c))).collect();
    out.push(("1".into(), Presheaf::terminal(cat)));
    out.extend(ys.iter().cloned());
    let om = omega.as_presheaf();
    let (omj, _) = om.restrict_to(cat, &omega_j(omega, j));
    out.push(("Ω".into(), om));
    out.push(("Ω_j".into(), omj));
    for (i, (na, a)) in ys.iter().enumerate() {
        for (nb, b) in &ys[i..] {
            out.push((format!("{na} × {nb}"), Presheaf::product(cat, a, b)));
        }
    }
    // subobject lattices grow fast; a loose element bound keeps this tractable
    out.retain(|(_, p)| p.total_elements() <= caps.max_elements.min(16));
    out
}
