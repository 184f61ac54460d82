//! The slice-product monoid on `M`, its action on Ω, equivariance of
//! endomaps of Ω, and weak topologies from translation families.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::admissible::{j_sub, AdmissibleClass, MPresheaf};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, Mor, Obj};
use crate::ideals::Ideal;
use crate::omega::{
    check_weak_topology, closure_from_j, double_negation, format_sieve, grothendieck_from_j, omega_j, Omega, OmegaEndo,
    TopologyCheck, WeakGrothendieck,
};
use crate::presheaf::{Presheaf, Subpresheaf};

/// `m × h = m ∘ m⁻¹(h)`, or an error naming the cospan.
pub fn product(cat: &FinCat, m: Mor, h: Mor) -> Result<Mor> {
    cat.slice_product(m, h)
        .ok_or_else(|| Error::MissingPullback { f: cat.mor_name(m).into(), g: cat.mor_name(h).into() })
}

/// `S·m = {h | m × h ∈ S}` for any `m` into `C`.
pub fn act(cat: &FinCat, c: Obj, s: &Bits, m: Mor) -> Result<Bits> {
    let mut out = Bits::empty(cat.num_morphisms());
    for &h in cat.arrows_into(c) {
        if s.contains(product(cat, m, h)?.0) {
            out.insert(h.0);
        }
    }
    Ok(out)
}

/// `(λ_C(m))_D(g, S_D) = {h | g⁻¹(m) × h ∈ S_D}` for `g: D -> C`.
pub fn lambda_eval(cat: &FinCat, m: Mor, g: Mor, s_d: &Bits) -> Result<Bits> {
    let gm = cat.try_pullback(g, m)?.leg_f;
    act(cat, cat.dom(g), s_d, gm)
}

/// `M` with its slice-product monoid structure and action on Ω.
#[derive(Clone, Debug)]
pub struct MonoidOnM {
    pub m: MPresheaf,
    /// Per object, `mul[i * n + k]` is the class of `rep_i × rep_k`.
    mul: Vec<Vec<usize>>,
    /// Per object, `act[s * n + i]` is the sieve index of `S_s · rep_i`.
    act: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MonoidLaws {
    pub unit: bool,
    pub associative: bool,
    pub commutative: bool,
    pub order_compatible: bool,
    pub natural: bool,
}

impl MonoidLaws {
    pub fn pass(&self) -> bool {
        self.unit && self.associative && self.commutative && self.order_compatible && self.natural
    }
}

impl MonoidOnM {
    pub fn new(omega: &Omega, class: &AdmissibleClass) -> Result<Self> {
        let cat = omega.cat();
        let m = MPresheaf::new(cat, class)?;
        let mut mul = Vec::new();
        let mut table = Vec::new();
        for c in cat.objects() {
            let reps = m.reps(c);
            let mut row = Vec::with_capacity(reps.len() * reps.len());
            for &a in reps {
                for &b in reps {
                    let p = product(cat, a, b)?;
                    row.push(
                        m.index_of(p).ok_or_else(|| {
                            Error::InvalidAdmissible(format!("{} is not in the class", cat.mor_name(p)))
                        })?,
                    );
                }
            }
            mul.push(row);
            let mut arow = Vec::with_capacity(omega.size(c) * reps.len());
            for s in omega.sieves(c) {
                for &a in reps {
                    let r = act(cat, c, s, a)?;
                    arow.push(omega.index_of(c, &r).expect("S·m is a sieve"));
                }
            }
            table.push(arow);
        }
        Ok(MonoidOnM { m, mul, act: table })
    }

    pub fn size(&self, c: Obj) -> usize {
        self.m.reps(c).len()
    }

    pub fn unit(&self, cat: &FinCat, c: Obj) -> usize {
        self.m.index_of(cat.id(c)).expect("identities are members")
    }

    pub fn mul(&self, c: Obj, i: usize, k: usize) -> usize {
        self.mul[c.0][i * self.size(c) + k]
    }

    /// Sieve index of `S·m`.
    pub fn act(&self, c: Obj, s: usize, i: usize) -> usize {
        self.act[c.0][s * self.size(c) + i]
    }

    pub fn laws(&self, cat: &FinCat) -> MonoidLaws {
        let mut r =
            MonoidLaws { unit: true, associative: true, commutative: true, order_compatible: true, natural: true };
        let rs = self.m.presheaf();
        for c in cat.objects() {
            let n = self.size(c);
            let e = self.unit(cat, c);
            for i in 0..n {
                r.unit &= self.mul(c, i, e) == i && self.mul(c, e, i) == i;
                for k in 0..n {
                    r.commutative &= self.mul(c, i, k) == self.mul(c, k, i);
                    for l in 0..n {
                        r.associative &= self.mul(c, self.mul(c, i, k), l) == self.mul(c, i, self.mul(c, k, l));
                    }
                    for i2 in 0..n {
                        for k2 in 0..n {
                            if self.m.le(cat, c, i, i2) && self.m.le(cat, c, k, k2) {
                                let (p, q) = (self.mul(c, i, k), self.mul(c, i2, k2));
                                r.order_compatible &= self.m.le(cat, c, p, q);
                            }
                        }
                    }
                }
            }
        }
        for h in cat.morphisms() {
            let (d, c) = (cat.dom(h), cat.cod(h));
            r.natural &= rs.restrict(h, self.unit(cat, c)) == self.unit(cat, d);
            for i in 0..self.size(c) {
                for k in 0..self.size(c) {
                    let lhs = rs.restrict(h, self.mul(c, i, k));
                    let rhs = self.mul(d, rs.restrict(h, i), rs.restrict(h, k));
                    r.natural &= lhs == rhs;
                }
            }
        }
        r
    }

    /// Forward `j(S·m) ⊆ j(S)·m` and backward `j(S)·m ⊆ j(S·m)` inclusions.
    pub fn equivariance(&self, omega: &Omega, j: &OmegaEndo) -> Equivariance {
        let cat = omega.cat();
        let mut r = Equivariance { forward: true, backward: true, equivariant: true, witness: None };
        for c in cat.objects() {
            for s in 0..omega.size(c) {
                for i in 0..self.size(c) {
                    let lhs = j.at(c, self.act(c, s, i));
                    let rhs = self.act(c, j.at(c, s), i);
                    let fw = omega.le(c, lhs, rhs);
                    let bw = omega.le(c, rhs, lhs);
                    if (!fw || !bw) && r.witness.is_none() {
                        r.witness = Some(EquivarianceWitness {
                            object: cat.obj_name(c).into(),
                            sieve: omega.format(c, s),
                            m: cat.mor_name(self.m.rep(c, i)).into(),
                            j_of_act: omega.format(c, lhs),
                            act_of_j: omega.format(c, rhs),
                        });
                    }
                    r.forward &= fw;
                    r.backward &= bw;
                }
            }
        }
        r.equivariant = r.forward && r.backward;
        r
    }

    /// Sieve indices on every object closed under the action.
    pub fn is_subact(&self, omega: &Omega, sub: &[Bits]) -> bool {
        omega
            .cat()
            .objects()
            .all(|c| sub[c.0].iter().all(|s| (0..self.size(c)).all(|i| sub[c.0].contains(self.act(c, s, i)))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceWitness {
    pub object: String,
    pub sieve: String,
    pub m: String,
    pub j_of_act: String,
    pub act_of_j: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivariance {
    pub forward: bool,
    pub backward: bool,
    pub equivariant: bool,
    pub witness: Option<EquivarianceWitness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FrameReport {
    pub monoid: MonoidLaws,
    pub action_unit: bool,
    pub action_compatible: bool,
    pub action_natural: bool,
    pub representative_independent: bool,
    pub commutativity_transfer: bool,
    pub meet: bool,
    pub join: bool,
    pub top: bool,
    pub bottom: bool,
    pub omega_jm_subact: bool,
    pub omega_jsub_subact: Option<bool>,
    /// `S ⊆ T, m ≤ n ⇒ S·m ⊆ T·n` for `S, T ∈ Ω_{j_Sub}` and all monos.
    pub sub_poset_monotone: Option<bool>,
    /// The same implication over all sieves, reported for comparison.
    pub sub_poset_monotone_all_sieves: Option<bool>,
    /// `|W_{μ_M}(C)|` per object; `W(C) = {(S, m) | ∀h, m × h ∈ S}`.
    pub w_mu_sizes: BTreeMap<String, usize>,
    pub w_mu_matches_action: bool,
    /// Per supplied endomap: whether it is equivariant and whether
    /// `{S | φ(S) = t}` is closed under the action.
    pub true_pullbacks: BTreeMap<String, (bool, bool)>,
    pub extensive_char_sigma: bool,
}

impl FrameReport {
    pub fn pass(&self) -> bool {
        self.monoid.pass()
            && self.action_unit
            && self.action_compatible
            && self.action_natural
            && self.representative_independent
            && self.commutativity_transfer
            && self.meet
            && self.join
            && self.top
            && self.bottom
            && self.omega_jm_subact
            && self.omega_jsub_subact != Some(false)
            && self.sub_poset_monotone != Some(false)
            && self.w_mu_matches_action
            && self.true_pullbacks.values().all(|&(eq, closed)| !eq || closed)
            && self.extensive_char_sigma
    }
}

/// Runs the monoid, action, frame and subact checks for one class.
/// `phis` are extra endomaps whose true-pullbacks are tested.
pub fn frame_and_subact_checks(
    omega: &Omega,
    class: &AdmissibleClass,
    phis: &[(String, OmegaEndo)],
) -> Result<FrameReport> {
    let cat = omega.cat();
    let mon = MonoidOnM::new(omega, class)?;
    let mut r = FrameReport {
        monoid: mon.laws(cat),
        action_unit: true,
        action_compatible: true,
        action_natural: true,
        representative_independent: true,
        commutativity_transfer: true,
        meet: true,
        join: true,
        top: true,
        bottom: true,
        w_mu_matches_action: true,
        extensive_char_sigma: true,
        ..Default::default()
    };
    let rs = mon.m.presheaf();
    for c in cat.objects() {
        let n = mon.size(c);
        let e = mon.unit(cat, c);
        let mut w = 0;
        for s in 0..omega.size(c) {
            r.action_unit &= mon.act(c, s, e) == s;
            for i in 0..n {
                let si = mon.act(c, s, i);
                for k in 0..n {
                    r.action_compatible &= mon.act(c, s, mon.mul(c, i, k)) == mon.act(c, si, k);
                    r.commutativity_transfer &= mon.act(c, s, mon.mul(c, i, k)) == mon.act(c, s, mon.mul(c, k, i));
                }
                for t in 0..omega.size(c) {
                    let ti = mon.act(c, t, i);
                    r.meet &= mon.act(c, omega.meet(c, s, t), i) == omega.meet(c, si, ti);
                    r.join &= mon.act(c, omega.join(c, s, t), i) == omega.join(c, si, ti);
                }
                // W_{μ_M} by its defining condition against S·m = t(C)
                let rep = mon.m.rep(c, i);
                let mut in_w = true;
                for &h in cat.arrows_into(c) {
                    in_w &= omega.sieve(c, s).contains(product(cat, rep, h)?.0);
                }
                if in_w {
                    w += 1;
                }
                r.w_mu_matches_action &= in_w == (si == omega.top(c));
            }
        }
        for i in 0..n {
            r.top &= mon.act(c, omega.top(c), i) == omega.top(c);
            r.bottom &= mon.act(c, omega.bottom(c), i) == omega.bottom(c);
        }
        // every member of the class, not only representatives
        for m in class.arrows().iter().map(Mor).filter(|&m| cat.cod(m) == c) {
            let i = mon.m.index_of(m).expect("member");
            for (s, sv) in omega.sieves(c).iter().enumerate() {
                let direct = act(cat, c, sv, m)?;
                r.representative_independent &= omega.index_of(c, &direct) == Some(mon.act(c, s, i));
            }
        }
        r.w_mu_sizes.insert(cat.obj_name(c).into(), w);
    }
    for k in cat.morphisms() {
        let (d, c) = (cat.dom(k), cat.cod(k));
        for s in 0..omega.size(c) {
            for i in 0..mon.size(c) {
                let lhs = omega.restrict(k, mon.act(c, s, i));
                let rhs = mon.act(d, omega.restrict(k, s), rs.restrict(k, i));
                r.action_natural &= lhs == rhs;
            }
        }
    }
    let mu = crate::admissible::Mu::new(omega, class)?;
    let jm = mu.topology(omega);
    let om_jm = omega_j(omega, &jm);
    r.omega_jm_subact = mon.is_subact(omega, om_jm.parts());
    for c in cat.objects() {
        for s in om_jm.at(c).iter() {
            let sv = omega.sieve(c, s);
            let ch = mu.char(cat, c, &mu.q.sigma(cat, c, sv));
            r.extensive_char_sigma &= sv.is_subset(&ch);
        }
    }
    if let Ok(js) = j_sub(omega) {
        let om_js = omega_j(omega, &js);
        r.omega_jsub_subact = Some(mon.is_subact(omega, om_js.parts()));
        if let Ok(all) = AdmissibleClass::all_monos(cat) {
            let sub = MonoidOnM::new(omega, &all)?;
            let mut restricted = true;
            let mut unrestricted = true;
            for c in cat.objects() {
                for s in 0..omega.size(c) {
                    for t in 0..omega.size(c) {
                        if !omega.le(c, s, t) {
                            continue;
                        }
                        for i in 0..sub.size(c) {
                            for k in 0..sub.size(c) {
                                if !sub.m.le(cat, c, i, k) {
                                    continue;
                                }
                                let ok = omega.le(c, sub.act(c, s, i), sub.act(c, t, k));
                                unrestricted &= ok;
                                if om_js.at(c).contains(s) && om_js.at(c).contains(t) {
                                    restricted &= ok;
                                }
                            }
                        }
                    }
                }
            }
            r.sub_poset_monotone = Some(restricted);
            r.sub_poset_monotone_all_sieves = Some(unrestricted);
        }
    }
    for (name, phi) in phis {
        let eq = mon.equivariance(omega, phi).equivariant;
        let w = grothendieck_from_j(omega, phi);
        let parts: Vec<Bits> = cat.objects().map(|c| Bits::from_indices(omega.size(c), w.cover_indices(c))).collect();
        r.true_pullbacks.insert(name.clone(), (eq, mon.is_subact(omega, &parts)));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub statement: String,
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl AuditRow {
    /// A one-directional claim fails only when the hypothesis holds and the
    /// conclusion does not.
    pub fn consistent(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceAudit {
    pub rows: Vec<AuditRow>,
    /// Per ideal name: the observed implication table between the two
    /// hypotheses and the two inclusions.
    pub ideal_tables: BTreeMap<String, Vec<AuditRow>>,
}

impl EquivarianceAudit {
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(AuditRow::consistent)
    }
}

/// Equivariance of ¬¬, `j_M`, `j_Sub` and each `j^I` for the action of the
/// class, with the hypotheses under which inclusions are claimed.
pub fn equivariance_audit(
    omega: &Omega,
    class: &AdmissibleClass,
    ideals: &[(String, Ideal)],
) -> Result<EquivarianceAudit> {
    let cat = omega.cat();
    let mon = MonoidOnM::new(omega, class)?;
    let nn = mon.equivariance(omega, &double_negation(omega));
    let jm = mon.equivariance(omega, &crate::admissible::Mu::new(omega, class)?.topology(omega));
    let pc = cat.has_pullback_completion();
    let mut rows = vec![
        AuditRow { statement: "¬¬ forward".into(), hypothesis: true, conclusion: nn.forward },
        AuditRow {
            statement: "¬¬ backward under pullback completion".into(), hypothesis: pc, conclusion: nn.backward
        },
        AuditRow { statement: "j_M forward".into(), hypothesis: true, conclusion: jm.forward },
        AuditRow {
            statement: "j_M backward under class pullback completion".into(),
            hypothesis: cat.has_class_pullback_completion(class.arrows()),
            conclusion: jm.backward,
        },
    ];
    if let Ok(js) = j_sub(omega) {
        let e = mon.equivariance(omega, &js);
        rows.push(AuditRow { statement: "j_Sub forward".into(), hypothesis: true, conclusion: e.forward });
        rows.push(AuditRow {
            statement: "j_Sub backward under mono pullback completion".into(),
            hypothesis: cat.has_class_pullback_completion(&cat.monos()),
            conclusion: e.backward,
        });
    }
    let mut ideal_tables = BTreeMap::new();
    for (name, i) in ideals {
        let e = mon.equivariance(omega, &i.weak_topology(omega));
        let stable = i.is_pullback_stable(cat);
        let conv = pc && i.is_converse_pullback_stable(cat);
        let table = vec![
            AuditRow { statement: "stable ⇒ backward".into(), hypothesis: stable, conclusion: e.backward },
            AuditRow { statement: "stable ⇒ forward".into(), hypothesis: stable, conclusion: e.forward },
            AuditRow {
                statement: "completion ∧ converse ⇒ backward".into(), hypothesis: conv, conclusion: e.backward
            },
            AuditRow {
                statement: "completion ∧ converse ⇒ forward".into(), hypothesis: conv, conclusion: e.forward
            },
        ];
        // the two implications that are claimed
        rows.push(AuditRow { statement: format!("j^{name} backward under stability"), ..table[0].clone() });
        rows.push(AuditRow {
            statement: format!("j^{name} forward under completion and converse stability"),
            ..table[3].clone()
        });
        ideal_tables.insert(name.clone(), table);
    }
    Ok(EquivarianceAudit { rows, ideal_tables })
}

/// A chosen arrow `f_C` into each object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationFamily {
    arrows: Vec<Mor>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyValidation {
    pub valid: bool,
    /// `g⁻¹(f_D) = f_C` for every `g: C -> D` (as subobjects).
    pub pullback_condition: bool,
    /// `(g, S_D)` violating the compatibility law.
    pub witness: Option<(String, String)>,
}

impl TranslationFamily {
    /// Checks `{h | f_C × h ∈ g*(S_D)} = {h | f_D × (g∘h) ∈ S_D}` for all
    /// `g: C -> D` and sieves `S_D`.
    pub fn validate(omega: &Omega, arrows: &[Mor]) -> Result<FamilyValidation> {
        let cat = omega.cat();
        if arrows.len() != cat.num_objects() || cat.objects().any(|c| cat.cod(arrows[c.0]) != c) {
            return Err(Error::InvalidFamily("need one arrow into each object".into()));
        }
        let mut r = FamilyValidation { valid: true, pullback_condition: true, witness: None };
        for g in cat.morphisms() {
            let (c, d) = (cat.dom(g), cat.cod(g));
            let (fc, fd) = (arrows[c.0], arrows[d.0]);
            match cat.pullback_along(g, fd) {
                Some(l) => r.pullback_condition &= cat.slice_isomorphic(l, fc),
                None => r.pullback_condition = false,
            }
            for s in omega.sieves(d) {
                let gs = omega.sieve(c, omega.restrict(g, omega.index_of(d, s).expect("sieve")));
                for &h in cat.arrows_into(c) {
                    let lhs = gs.contains(product(cat, fc, h)?.0);
                    let rhs = s.contains(product(cat, fd, cat.compose(g, h))?.0);
                    if lhs != rhs {
                        r.valid = false;
                        if r.witness.is_none() {
                            r.witness = Some((cat.mor_name(g).into(), format_sieve(cat, s)));
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn new(omega: &Omega, arrows: Vec<Mor>) -> Result<Self> {
        let v = Self::validate(omega, &arrows)?;
        if !v.valid {
            let (g, s) = v.witness.unwrap_or_default();
            return Err(Error::InvalidFamily(format!("compatibility fails for g = {g}, S = {s}")));
        }
        Ok(TranslationFamily { arrows })
    }

    /// From object name to morphism name; every object must be listed.
    pub fn from_names(omega: &Omega, names: &BTreeMap<String, String>) -> Result<Self> {
        let cat = omega.cat();
        let mut arrows = Vec::with_capacity(cat.num_objects());
        for c in cat.objects() {
            let n = names
                .get(cat.obj_name(c))
                .ok_or_else(|| Error::InvalidFamily(format!("no arrow for {}", cat.obj_name(c))))?;
            arrows.push(cat.morphism(n)?);
        }
        for k in names.keys() {
            cat.object(k)?;
        }
        Self::new(omega, arrows)
    }

    pub fn identities(omega: &Omega) -> Self {
        let cat = omega.cat();
        TranslationFamily { arrows: cat.objects().map(|c| cat.id(c)).collect() }
    }

    pub fn arrows(&self) -> &[Mor] {
        &self.arrows
    }

    pub fn arrow(&self, c: Obj) -> Mor {
        self.arrows[c.0]
    }

    /// `α(S) = {h | f_C × h ∈ S}`.
    pub fn alpha(&self, omega: &Omega) -> Result<OmegaEndo> {
        let cat = omega.cat();
        let mut err = None;
        let j = OmegaEndo::from_fn(omega, |c, s| match act(cat, c, s, self.arrows[c.0]) {
            Ok(b) => b,
            Err(e) => {
                err.get_or_insert(e);
                s.clone()
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(j),
        }
    }

    /// Every `f_C` satisfies `f_C × f_C ≅ f_C` in the slice.
    pub fn all_idempotent(&self, cat: &FinCat) -> Result<bool> {
        for &f in &self.arrows {
            if !cat.slice_isomorphic(product(cat, f, f)?, f) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f_C × h ∈ S ⇔ f_C² × h ∈ S` for all `S` and `h ∈ α(S)`.
    pub fn duplication_law(&self, omega: &Omega, alpha: &OmegaEndo) -> Result<bool> {
        let cat = omega.cat();
        for c in cat.objects() {
            let f = self.arrows[c.0];
            let f2 = product(cat, f, f)?;
            for (i, s) in omega.sieves(c).iter().enumerate() {
                for h in omega.sieve(c, alpha.at(c, i)).iter().map(Mor) {
                    if s.contains(product(cat, f, h)?.0) != s.contains(product(cat, f2, h)?.0) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `J_α(C) = {S | ∀h, ∀k into D_{f_C × h}, (f_C × h) ∘ k ∈ S}`.
    pub fn grothendieck(&self, omega: &Omega) -> Result<WeakGrothendieck> {
        let cat = omega.cat();
        let prods: Vec<Vec<Mor>> = cat
            .objects()
            .map(|c| cat.arrows_into(c).iter().map(|&h| product(cat, self.arrows[c.0], h)).collect())
            .collect::<Result<_>>()?;
        Ok(WeakGrothendieck::from_predicate(omega, |c, s| {
            prods[c.0].iter().all(|&p| cat.arrows_into(cat.dom(p)).iter().all(|&k| s.contains(cat.compose(p, k).0)))
        }))
    }

    /// `Ḡ(C) = {x | ∀h, F(f_C × h)(x) ∈ G(D_{f_C × h})}`.
    pub fn closure(&self, cat: &FinCat, f: &Presheaf, g: &Subpresheaf) -> Result<Subpresheaf> {
        let mut parts = Vec::with_capacity(cat.num_objects());
        for c in cat.objects() {
            let prods: Vec<Mor> =
                cat.arrows_into(c).iter().map(|&h| product(cat, self.arrows[c.0], h)).collect::<Result<_>>()?;
            parts.push(Bits::from_indices(
                f.size(c),
                (0..f.size(c)).filter(|&x| prods.iter().all(|&p| g.contains(cat.dom(p), f.restrict(p, x)))),
            ));
        }
        Ok(Subpresheaf::from_parts_unchecked(parts))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyAudit {
    pub validation: FamilyValidation,
    pub topology: TopologyCheck,
    pub all_idempotent: bool,
    pub duplication_law: bool,
    /// Equivariance for the given class, when one is supplied.
    pub equivariance: Option<Equivariance>,
    pub grothendieck_matches: bool,
    pub closure_matches: bool,
}

impl FamilyAudit {
    pub fn pass(&self) -> bool {
        self.validation.valid
            && self.topology.weak
            && self.topology.productive
            && (!self.all_idempotent || self.topology.idempotent)
            && (!self.topology.idempotent || self.duplication_law)
            && self.equivariance.as_ref().is_none_or(|e| e.equivariant)
            && self.grothendieck_matches
            && self.closure_matches
    }
}

/// All checks on a family; closures are compared on the representables and Ω.
pub fn family_audit(
    omega: &Omega,
    family: &TranslationFamily,
    class: Option<&AdmissibleClass>,
    caps: &crate::error::Caps,
) -> Result<FamilyAudit> {
    let cat = omega.cat();
    let alpha = family.alpha(omega)?;
    let topology = check_weak_topology(omega, &alpha);
    let equivariance = match class {
        Some(cl) => Some(MonoidOnM::new(omega, cl)?.equivariance(omega, &alpha)),
        None => None,
    };
    let mut closure_matches = true;
    let mut targets: Vec<Presheaf> = cat.objects().map(|c| Presheaf::yoneda(cat, c)).collect();
    targets.push(omega.as_presheaf());
    for f in &targets {
        for g in f.enumerate_subpresheaves(cat, caps)? {
            closure_matches &= family.closure(cat, f, &g)? == closure_from_j(omega, &alpha, f, &g);
        }
    }
    Ok(FamilyAudit {
        validation: TranslationFamily::validate(omega, &family.arrows)?,
        all_idempotent: family.all_idempotent(cat)?,
        duplication_law: family.duplication_law(omega, &alpha)?,
        topology,
        equivariance,
        grothendieck_matches: family.grothendieck(omega)? == grothendieck_from_j(omega, &alpha),
        closure_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::enumerate_admissible_classes;
    use crate::error::Caps;
    use crate::fixtures;
    use crate::ideals::enumerate_ideals;
    use crate::omega::parse_sieve;

    fn caps() -> Caps {
        Caps::default()
    }

    fn complete_zoo() -> Vec<(&'static str, FinCat)> {
        fixtures::zoo().into_iter().filter(|(_, c)| c.is_finitely_complete()).collect()
    }

    #[test]
    fn monoid_examples() {
        let l3 = fixtures::l3();
        let om = Omega::new(&l3, &caps()).unwrap();
        let class = AdmissibleClass::from_names(&l3, &fixtures::L3_CLASS).unwrap();
        let mon = MonoidOnM::new(&om, &class).unwrap();
        let y = l3.object("y").unwrap();
        let xy = mon.m.index_of(l3.morphism("x<=y").unwrap()).unwrap();
        assert_eq!(mon.mul(y, xy, xy), xy);
        assert!(mon.laws(&l3).pass());

        let d = fixtures::diamond();
        let om = Omega::new(&d, &caps()).unwrap();
        let mon = MonoidOnM::new(&om, &AdmissibleClass::all_monos(&d).unwrap()).unwrap();
        let one = d.object("1").unwrap();
        let ix = |n: &str| mon.m.index_of(d.morphism(n).unwrap()).unwrap();
        assert_eq!(mon.mul(one, ix("a<=1"), ix("b<=1")), ix("0<=1"));
    }

    #[test]
    fn action_examples() {
        let l3 = fixtures::l3();
        let one = l3.object("1").unwrap();
        let s = parse_sieve(&l3, one, &["x<=1", "y<=1"]).unwrap();
        let m = l3.morphism("y<=1").unwrap();
        assert_eq!(act(&l3, one, &s, m).unwrap(), l3.into_bits(one));
        assert_eq!(act(&l3, one, &s, l3.id(one)).unwrap(), s);
        // λ at g = id agrees with the action
        assert_eq!(lambda_eval(&l3, m, l3.id(one), &s).unwrap(), act(&l3, one, &s, m).unwrap());
    }

    #[test]
    fn frame_checks_on_zoo() {
        for (name, cat) in complete_zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            let nn = double_negation(&om);
            for class in enumerate_admissible_classes(&cat, &caps()).unwrap() {
                let r = frame_and_subact_checks(&om, &class, &[("¬¬".into(), nn.clone())]).unwrap();
                assert!(r.pass(), "{name} {:?}: {r:?}", class.names(&cat));
                let e = MonoidOnM::new(&om, &class).unwrap().equivariance(&om, &nn);
                assert!(e.forward, "{name}");
                let id = MonoidOnM::new(&om, &class).unwrap().equivariance(&om, &OmegaEndo::identity(&om));
                assert!(id.equivariant);
            }
        }
    }

    #[test]
    fn sub_poset_needs_closed_sieves() {
        let l3 = fixtures::l3();
        let om = Omega::new(&l3, &caps()).unwrap();
        let r = frame_and_subact_checks(&om, &AdmissibleClass::all_monos(&l3).unwrap(), &[]).unwrap();
        assert_eq!(r.sub_poset_monotone, Some(true));
        // T = {x<=1}, m = x<=1 ≤ n = id_1: T·m = t(1) but T·n = T
        assert_eq!(r.sub_poset_monotone_all_sieves, Some(false));
        let d = fixtures::diamond();
        let om = Omega::new(&d, &caps()).unwrap();
        let r = frame_and_subact_checks(&om, &AdmissibleClass::all_monos(&d).unwrap(), &[]).unwrap();
        assert_eq!(r.sub_poset_monotone, Some(true));
    }

    #[test]
    fn equivariance_hypotheses() {
        for (name, cat) in complete_zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            let ideals: Vec<(String, Ideal)> = enumerate_ideals(&om, &caps())
                .unwrap()
                .into_iter()
                .enumerate()
                .map(|(i, id)| (format!("I{i}"), id))
                .collect();
            for class in enumerate_admissible_classes(&cat, &caps()).unwrap() {
                let a = equivariance_audit(&om, &class, &ideals).unwrap();
                for row in &a.rows {
                    assert!(row.consistent(), "{name}: {row:?}");
                }
            }
        }
        let l3 = fixtures::l3();
        let om = Omega::new(&l3, &caps()).unwrap();
        let class = AdmissibleClass::from_names(&l3, &fixtures::L3_CLASS).unwrap();
        let e = MonoidOnM::new(&om, &class).unwrap().equivariance(&om, &double_negation(&om));
        assert!(e.equivariant);
    }

    fn l3_family(om: &Omega) -> TranslationFamily {
        let names = fixtures::L3_FAMILY.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        TranslationFamily::from_names(om, &names).unwrap()
    }

    #[test]
    fn translation_families() {
        let l3 = fixtures::l3();
        let om = Omega::new(&l3, &caps()).unwrap();
        let fam = l3_family(&om);
        let class = AdmissibleClass::from_names(&l3, &fixtures::L3_CLASS).unwrap();
        let a = family_audit(&om, &fam, Some(&class), &caps()).unwrap();
        assert!(a.pass(), "{a:?}");
        assert!(a.validation.pullback_condition && a.all_idempotent && a.topology.topology);
        let alpha = fam.alpha(&om).unwrap();
        let one = l3.object("1").unwrap();
        let s = parse_sieve(&l3, one, &["x<=1"]).unwrap();
        assert_eq!(alpha.apply(&om, one, &s), &l3.into_bits(one));
        for (_, cat) in complete_zoo() {
            let om = Omega::new(&cat, &caps()).unwrap();
            let id = TranslationFamily::identities(&om);
            assert_eq!(id.alpha(&om).unwrap(), OmegaEndo::identity(&om));
        }
        // swapping f_y breaks compatibility
        let mut bad: BTreeMap<String, String> =
            fixtures::L3_FAMILY.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        bad.insert("y".into(), "id_y".into());
        assert!(matches!(TranslationFamily::from_names(&om, &bad), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn non_monic_family() {
        // e has no pullback along itself, so e × h is undefined
        let m = fixtures::mon_e();
        let om = Omega::new(&m, &caps()).unwrap();
        let names = BTreeMap::from([("*".to_string(), "e".to_string())]);
        assert!(matches!(TranslationFamily::from_names(&om, &names), Err(Error::MissingPullback { .. })));
        let id = BTreeMap::from([("*".to_string(), "1".to_string())]);
        let fam = TranslationFamily::from_names(&om, &id).unwrap();
        assert!(family_audit(&om, &fam, None, &caps()).unwrap().pass());
    }
}
