//! Commands over a workspace and the reports they produce.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{equivariance_audit, family_audit, frame_and_subact_checks, MonoidOnM};
use crate::admissible::{
    class_closure, enumerate_admissible_classes, grothendieck_from_class, j_sub, partial_map_category_check,
    topology_from_class, AdmissibleClass, Mu,
};
use crate::error::{Error, Result};
use crate::ideals::{enumerate_ideals, Ideal};
use crate::omega::{
    check_weak_topology, closure_from_j, curated_candidates, de_morgan_check, double_negation, double_negation_atomic,
    grothendieck_from_j, Omega, OmegaEndo,
};
use crate::presheaf::Presheaf;
use crate::workspace::Workspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Omega,
    Ideals,
    IdealAudit(String),
    AdmissibleAudit(String),
    ActionAudit(String),
    Equivariance(String, String),
    DeMorgan(String),
    FamilyAudit(String),
    FullAudit,
}

impl Command {
    /// Parses a whitespace-separated command line such as `ideal-audit I`.
    pub fn parse(line: &str) -> Result<Self> {
        let words: Vec<&str> = line.split_whitespace().collect();
        Self::from_words(&words)
    }

    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let w: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
        let one = |f: fn(String) -> Command| match w.len() {
            2 => Ok(f(w[1].to_string())),
            _ => Err(Error::Malformed(format!("`{}` takes one name", w[0]))),
        };
        match w.first().copied() {
            Some("validate") if w.len() == 1 => Ok(Command::Validate),
            Some("omega") if w.len() == 1 => Ok(Command::Omega),
            Some("ideals") if w.len() == 1 => Ok(Command::Ideals),
            Some("full-audit") if w.len() == 1 => Ok(Command::FullAudit),
            Some("ideal-audit") => one(Command::IdealAudit),
            Some("admissible-audit") => one(Command::AdmissibleAudit),
            Some("action-audit") => one(Command::ActionAudit),
            Some("demorgan") => one(Command::DeMorgan),
            Some("family-audit") => one(Command::FamilyAudit),
            Some("equivariance") if w.len() == 3 => Ok(Command::Equivariance(w[1].into(), w[2].into())),
            _ => Err(Error::Malformed(format!("unknown command `{}`", w.join(" ")))),
        }
    }

    pub fn line(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::Omega => "omega".into(),
            Command::Ideals => "ideals".into(),
            Command::FullAudit => "full-audit".into(),
            Command::IdealAudit(n) => format!("ideal-audit {n}"),
            Command::AdmissibleAudit(n) => format!("admissible-audit {n}"),
            Command::ActionAudit(n) => format!("action-audit {n}"),
            Command::DeMorgan(n) => format!("demorgan {n}"),
            Command::FamilyAudit(n) => format!("family-audit {n}"),
            Command::Equivariance(j, m) => format!("equivariance {j} {m}"),
        }
    }
}

/// One checked statement: the hypotheses as evaluated, and whether the
/// conclusion was observed. It holds unless every hypothesis is true and
/// the conclusion is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub scope: String,
    pub theorem: String,
    pub hypotheses: BTreeMap<String, bool>,
    pub conclusion: bool,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub results: BTreeMap<String, Value>,
    pub audit: Vec<AuditEntry>,
}

impl Report {
    fn new(command: &Command) -> Self {
        Report { command: command.line(), pass: true, results: BTreeMap::new(), audit: Vec::new() }
    }

    fn check(&mut self, scope: &str, theorem: &str, hyps: &[(&str, bool)], conclusion: bool, witness: Option<String>) {
        let holds = !hyps.iter().all(|h| h.1) || conclusion;
        self.pass &= holds;
        self.audit.push(AuditEntry {
            scope: scope.into(),
            theorem: theorem.into(),
            hypotheses: hyps.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            conclusion,
            holds,
            witness: if holds { None } else { witness },
        });
    }

    fn absorb(&mut self, other: Report) {
        self.pass &= other.pass;
        self.results.insert(other.command, json!(other.results));
        self.audit.extend(other.audit);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.audit {
            let mark = if e.holds { "ok  " } else { "FAIL" };
            let hyps: Vec<String> = e.hypotheses.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let hyps = if hyps.is_empty() { String::new() } else { format!(" [{}]", hyps.join(", ")) };
            out.push_str(&format!("{mark} {}: {}{hyps} -> {}\n", e.scope, e.theorem, e.conclusion));
            if let Some(w) = &e.witness {
                out.push_str(&format!("     witness: {w}\n"));
            }
        }
        let failed = self.audit.iter().filter(|e| !e.holds).count();
        out.push_str(&format!(
            "{}: {} (checked {}, failed {failed})\n",
            self.command,
            if self.pass { "PASS" } else { "FAIL" },
            self.audit.len()
        ));
        out
    }
}

fn first_witness(ws: &[String]) -> Option<String> {
    ws.first().cloned()
}

/// A named endomap of Ω: `¬¬`, `id`, `true`, `j_sub`, an ideal (optionally
/// written `j^NAME`), a family, or an admissible class (its `j_M`).
pub fn resolve_topology(ws: &Workspace, omega: &Omega, name: &str) -> Result<OmegaEndo> {
    match name {
        "¬¬" | "not-not" | "nn" => return Ok(double_negation(omega)),
        "id" | "identity" => return Ok(OmegaEndo::identity(omega)),
        "true" => return Ok(OmegaEndo::constant_true(omega)),
        "j_sub" | "j_Sub" => return j_sub(omega),
        _ => {}
    }
    let bare = name.strip_prefix("j^").unwrap_or(name);
    if let Some(i) = ws.ideals.get(bare) {
        return Ok(i.weak_topology(omega));
    }
    if ws.families.contains_key(bare) {
        return ws.family(omega, bare)?.alpha(omega);
    }
    let bare = name.strip_prefix("j_").unwrap_or(name);
    if let Some(c) = ws.classes.get(bare) {
        return Ok(Mu::new(omega, c)?.topology(omega));
    }
    Err(Error::UnknownName(name.into()))
}

fn class<'w>(ws: &'w Workspace, name: &str) -> Result<&'w AdmissibleClass> {
    ws.classes.get(name).ok_or_else(|| Error::UnknownName(name.into()))
}

pub fn run(ws: &Workspace, cmd: &Command) -> Result<Report> {
    let omega = Omega::new(&ws.cat, &ws.caps)?;
    run_with(ws, &omega, cmd)
}

/// Runs several commands into one report; a single command is returned as is.
pub fn run_all(ws: &Workspace, cmds: &[Command]) -> Result<Report> {
    let omega = Omega::new(&ws.cat, &ws.caps)?;
    if let [one] = cmds {
        return run_with(ws, &omega, one);
    }
    let mut r = Report { command: "requests".into(), pass: true, results: BTreeMap::new(), audit: Vec::new() };
    for c in cmds {
        r.absorb(run_with(ws, &omega, c)?);
    }
    Ok(r)
}

fn run_with(ws: &Workspace, omega: &Omega, cmd: &Command) -> Result<Report> {
    let mut r = Report::new(cmd);
    match cmd {
        Command::Validate => validate(ws, omega, &mut r),
        Command::Omega => omega_report(ws, omega, &mut r)?,
        Command::Ideals => ideals_report(ws, omega, &mut r)?,
        Command::IdealAudit(n) => {
            let i = ws.ideals.get(n).ok_or_else(|| Error::UnknownName(n.clone()))?;
            ideal_audit(ws, omega, n, i, &mut r)?
        }
        Command::AdmissibleAudit(n) => admissible_audit(ws, omega, n, class(ws, n)?, &mut r)?,
        Command::ActionAudit(n) => {
            let named: Vec<(String, Ideal)> = ws.ideals.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            action_audit(ws, omega, n, class(ws, n)?, &named, &mut r)?
        }
        Command::Equivariance(j, m) => {
            let e = MonoidOnM::new(omega, class(ws, m)?)?.equivariance(omega, &resolve_topology(ws, omega, j)?);
            let w = e.witness.as_ref().map(|w| format!("{w:?}"));
            r.results.insert("equivariance".into(), json!(e));
            r.check(&format!("{j} / {m}"), "action preserving", &[], e.equivariant, w);
        }
        Command::DeMorgan(n) => demorgan(ws, omega, n, &mut r)?,
        Command::FamilyAudit(n) => family(ws, omega, n, &mut r)?,
        Command::FullAudit => full_audit(ws, omega, &mut r)?,
    }
    Ok(r)
}

fn validate(ws: &Workspace, omega: &Omega, r: &mut Report) {
    let cat = &ws.cat;
    let preds = cat.structural_predicates(None);
    r.results.insert("objects".into(), json!(cat.num_objects()));
    r.results.insert("morphisms".into(), json!(cat.num_morphisms()));
    r.results.insert("predicates".into(), json!(preds));
    r.check("category", "category axioms", &[], true, None);
    for (n, i) in &ws.ideals {
        let ok = Ideal::new(cat, cat.objects().map(|c| i.at(c).clone()).collect()).is_ok();
        r.check(&format!("ideal {n}"), "ideal axioms", &[], ok, None);
    }
    for (n, c) in &ws.classes {
        let rep = AdmissibleClass::validate(cat, c.arrows());
        r.check(&format!("class {n}"), "admissible class axioms", &[], rep.is_valid(), first_witness(&rep.witnesses));
    }
    for n in ws.families.keys() {
        r.check(&format!("family {n}"), "family compatibility", &[], ws.family(omega, n).is_ok(), None);
    }
    let sizes: BTreeMap<&String, usize> = ws.presheaves.iter().map(|(n, p)| (n, p.total_elements())).collect();
    r.results.insert("presheaves".into(), json!(sizes));
}

fn omega_report(ws: &Workspace, omega: &Omega, r: &mut Report) -> Result<()> {
    let cat = &ws.cat;
    let mut sieves = BTreeMap::new();
    for c in cat.objects() {
        let list: Vec<String> = (0..omega.size(c)).map(|i| omega.format(c, i)).collect();
        let subs = Presheaf::yoneda(cat, c).enumerate_subpresheaves(cat, &ws.caps)?.len();
        r.check(
            &format!("y({})", cat.obj_name(c)),
            "subpresheaves of a representable are its sieves",
            &[],
            subs == list.len(),
            Some(format!("{subs} subpresheaves, {} sieves", list.len())),
        );
        sieves.insert(cat.obj_name(c).to_string(), json!({ "count": list.len(), "sieves": list }));
    }
    r.results.insert("omega".into(), json!(sieves));
    let nn = double_negation(omega);
    let t = check_weak_topology(omega, &nn);
    r.check("¬¬", "double negation is a topology", &[], t.topology, first_witness(&t.witnesses));
    let ore = cat.is_right_ore();
    let atomic = ore && double_negation_atomic(omega)? == nn;
    r.check("¬¬", "atomic form under right Ore", &[("right_ore", ore)], atomic, None);
    r.results.insert("double_negation".into(), json!(t));
    Ok(())
}

fn ideals_report(ws: &Workspace, omega: &Omega, r: &mut Report) -> Result<()> {
    let cat = &ws.cat;
    let all = enumerate_ideals(omega, &ws.caps)?;
    let listed: Vec<Value> = all
        .iter()
        .map(|i| {
            json!({
                "parts": i.to_names(cat),
                "idempotent": i.is_idempotent(cat),
                "nonempty_everywhere": i.is_nonempty_everywhere(),
            })
        })
        .collect();
    r.results.insert("count".into(), json!(all.len()));
    r.results.insert("ideals".into(), json!(listed));
    let revalid = all.iter().all(|i| Ideal::new(cat, cat.objects().map(|c| i.at(c).clone()).collect()).is_ok());
    r.check("ideals", "enumerated ideals revalidate", &[], revalid, None);
    for (n, i) in &ws.ideals {
        r.check(&format!("ideal {n}"), "named ideal is enumerated", &[], all.contains(i), None);
    }
    Ok(())
}

fn closure_targets(ws: &Workspace, omega: &Omega) -> Vec<Presheaf> {
    let mut out: Vec<Presheaf> = ws.cat.objects().map(|c| Presheaf::yoneda(&ws.cat, c)).collect();
    out.push(omega.as_presheaf());
    out
}

fn ideal_audit(ws: &Workspace, omega: &Omega, name: &str, i: &Ideal, r: &mut Report) -> Result<()> {
    let cat = &ws.cat;
    let scope = format!("ideal {name}");
    let j = i.weak_topology(omega);
    let t = check_weak_topology(omega, &j);
    let idem = i.is_idempotent(cat);
    let nonempty = i.is_nonempty_everywhere();
    let ore = cat.is_right_ore();
    let w = first_witness(&t.witnesses);
    r.check(&scope, "ideal topology is weak and productive", &[], t.weak && t.productive, w.clone());
    r.check(&scope, "closure idempotent iff ideal idempotent", &[], t.idempotent == idem, w.clone());
    r.check(&scope, "topology iff ideal idempotent", &[], t.topology == idem, w);
    let mut agree = true;
    for f in closure_targets(ws, omega) {
        for g in f.enumerate_subpresheaves(cat, &ws.caps)? {
            agree &= i.closure(cat, &f, &g) == closure_from_j(omega, &j, &f, &g);
        }
    }
    r.check(&scope, "closure formula matches classifying map", &[], agree, None);
    let mf: Vec<_> = cat.objects().map(|c| i.matching_family_check(cat, c)).collect();
    let mf_fw = mf.iter().all(|m| m.forward);
    let matching: BTreeMap<String, bool> =
        cat.objects().map(|c| (cat.obj_name(c).to_string(), mf[c.0].holds())).collect();
    r.check(&scope, "ideal pieces: membership passes to composites", &[], mf_fw, None);
    let nn = double_negation(omega);
    let nn_i = i.double_negation(omega);
    r.check(&scope, "relative double negation is double negation", &[("nonempty", nonempty)], nn_i == nn, None);
    r.check(
        &scope,
        "ideal topology below double negation",
        &[("nonempty", nonempty), ("idempotent", idem)],
        j.le(omega, &nn),
        None,
    );
    let dm = de_morgan_check(omega, &j, &curated_candidates(omega, &j, &ws.caps), &ws.caps)?;
    let dmw = dm.entries.iter().find(|e| !e.pass).map(|e| format!("{}: {:?}", e.name, e.witness));
    r.check(
        &scope,
        "De Morgan for the ideal topology",
        &[("right_ore", ore), ("nonempty", nonempty), ("idempotent", idem)],
        dm.pass,
        dmw,
    );
    let jt = i.grothendieck(omega);
    let from_j = grothendieck_from_j(omega, &j);
    let covers: BTreeMap<String, Vec<String>> =
        cat.objects().map(|c| (cat.obj_name(c).to_string(), jt.format(omega, c))).collect();
    let covers_from_j: BTreeMap<String, Vec<String>> =
        cat.objects().map(|c| (cat.obj_name(c).to_string(), from_j.format(omega, c))).collect();
    r.check(&scope, "covers containing the ideal are the j-dense sieves", &[("idempotent", idem)], jt == from_j, None);
    r.results.insert(
        scope,
        json!({
            "parts": i.to_names(cat),
            "idempotent": idem,
            "nonempty_everywhere": nonempty,
            "pullback_stable": i.is_pullback_stable(cat),
            "matching_family": matching,
            "converse_pullback_stable": i.is_converse_pullback_stable(cat),
            "topology": t,
            "covers": covers,
            "covers_from_j": covers_from_j,
            "covers_agree": jt == from_j,
            "equals_identity": j == OmegaEndo::identity(omega),
            "equals_true": j == OmegaEndo::constant_true(omega),
            "de_morgan": dm,
        }),
    );
    Ok(())
}

fn admissible_audit(ws: &Workspace, omega: &Omega, name: &str, cl: &AdmissibleClass, r: &mut Report) -> Result<()> {
    let cat = &ws.cat;
    let scope = format!("class {name}");
    let rep = AdmissibleClass::validate(cat, cl.arrows());
    r.check(&scope, "admissible class axioms", &[], rep.is_valid(), first_witness(&rep.witnesses));
    let mu = Mu::new(omega, cl)?;
    r.check(
        &scope,
        "existential after diagonal is identity",
        &[],
        mu.q.exists_sigma(omega) == OmegaEndo::identity(omega),
        None,
    );
    let mut t_idem = true;
    let mut t_true = true;
    let mut ext = true;
    for c in cat.objects() {
        for u in mu.q.product(c).enumerate_subpresheaves(cat, &ws.caps)? {
            let t = mu.q.t_x(cat, c, &u);
            t_idem &= mu.q.t_x(cat, c, &t) == t;
        }
        t_true &= mu.q.t_x(cat, c, &mu.q.true_x(c)) == mu.q.true_x(c);
        for s in omega.sieves(c) {
            ext &= mu.char(cat, c, &mu.apply(cat, c, s)).contains(cat.id(c).0);
        }
    }
    r.check(&scope, "closure on relations is idempotent", &[], t_idem, None);
    r.check(&scope, "closure on relations keeps true", &[], t_true, None);
    r.check(&scope, "identity is in Char of every relation image", &[], ext, None);
    r.check(&scope, "relation map natural", &[], mu.is_natural(omega), None);
    r.check(&scope, "relation map injective", &[], mu.is_injective(omega), None);
    let jm = mu.topology(omega);
    let t = check_weak_topology(omega, &jm);
    r.check(&scope, "class topology is a topology", &[], t.topology, first_witness(&t.witnesses));
    let formula = topology_from_class(omega, cl.arrows())?;
    r.check(&scope, "class topology two ways", &[], formula == jm, None);
    r.check(
        &scope,
        "covers meet the class",
        &[],
        grothendieck_from_j(omega, &jm) == grothendieck_from_class(omega, cl.arrows()),
        None,
    );
    let mut agree = true;
    for f in closure_targets(ws, omega) {
        for g in f.enumerate_subpresheaves(cat, &ws.caps)? {
            agree &= class_closure(cat, cl.arrows(), &f, &g) == closure_from_j(omega, &jm, &f, &g);
        }
    }
    r.check(&scope, "class closure matches classifying map", &[], agree, None);
    let nn = double_negation(omega);
    let monos_ok = AdmissibleClass::all_monos(cat).is_ok();
    let (chain, jsub_nn) = match j_sub(omega) {
        Ok(js) if monos_ok => (jm.le(omega, &js) && js.le(omega, &nn), Some(js == nn)),
        _ => (false, None),
    };
    r.check(&scope, "class topology below j_Sub below ¬¬", &[("monos_admissible", monos_ok)], chain, None);
    let pm = partial_map_category_check(omega, cl.arrows())?;
    r.check(&scope, "partial maps form a category", &[], pm.pass(), first_witness(&pm.witnesses));
    let reps: BTreeMap<String, Vec<String>> = cat
        .objects()
        .map(|c| {
            let names = mu.m.reps(c).iter().map(|&m| cat.mor_name(m).to_string()).collect();
            (cat.obj_name(c).to_string(), names)
        })
        .collect();
    r.results.insert(
        scope,
        json!({
            "arrows": cl.names(cat),
            "validation": rep,
            "representatives": reps,
            "topology": t,
            "j_sub_equals_double_negation": jsub_nn,
            "partial_maps": pm,
        }),
    );
    Ok(())
}

fn action_audit(
    ws: &Workspace,
    omega: &Omega,
    name: &str,
    cl: &AdmissibleClass,
    ideals: &[(String, Ideal)],
    r: &mut Report,
) -> Result<()> {
    let scope = format!("action {name}");
    let phis = vec![("¬¬".to_string(), double_negation(omega))];
    let f = frame_and_subact_checks(omega, cl, &phis)?;
    let checks = [
        ("monoid laws", f.monoid.pass()),
        ("action unit", f.action_unit),
        ("action compatible with product", f.action_compatible),
        ("action natural", f.action_natural),
        ("action independent of representative", f.representative_independent),
        ("commutativity transfers", f.commutativity_transfer),
        ("meet preserved", f.meet),
        ("join preserved", f.join),
        ("top preserved", f.top),
        ("bottom preserved", f.bottom),
        ("closed sieves of class topology form a subact", f.omega_jm_subact),
        ("diagonal map is extensive on closed sieves", f.extensive_char_sigma),
        ("W is the stabilizer of top", f.w_mu_matches_action),
    ];
    for (t, ok) in checks {
        r.check(&scope, t, &[], ok, None);
    }
    let defined = f.omega_jsub_subact.is_some();
    r.check(
        &scope,
        "closed sieves of j_Sub form a subact",
        &[("j_sub_defined", defined)],
        f.omega_jsub_subact == Some(true),
        None,
    );
    let monos = f.sub_poset_monotone.is_some();
    r.check(
        &scope,
        "action monotone on j_Sub-closed sieves",
        &[("monos_admissible", monos)],
        f.sub_poset_monotone == Some(true),
        None,
    );
    for (n, &(eq, closed)) in &f.true_pullbacks {
        r.check(&scope, &format!("true-pullback of {n} is a subact"), &[("equivariant", eq)], closed, None);
    }
    let a = equivariance_audit(omega, cl, ideals)?;
    for row in &a.rows {
        r.check(&scope, &row.statement, &[("hypothesis", row.hypothesis)], row.conclusion, None);
    }
    r.results.insert(scope, json!({ "frame": f, "equivariance": a }));
    let _ = ws;
    Ok(())
}

fn demorgan(ws: &Workspace, omega: &Omega, name: &str, r: &mut Report) -> Result<()> {
    let cat = &ws.cat;
    let j = resolve_topology(ws, omega, name)?;
    let t = check_weak_topology(omega, &j);
    let ore = cat.is_right_ore();
    let mut hyps = vec![("right_ore", ore), ("topology", t.topology)];
    if let Some(i) = ws.ideals.get(name.strip_prefix("j^").unwrap_or(name)) {
        hyps.push(("nonempty", i.is_nonempty_everywhere()));
        hyps.push(("idempotent", i.is_idempotent(cat)));
    }
    let dm = de_morgan_check(omega, &j, &curated_candidates(omega, &j, &ws.caps), &ws.caps)?;
    let w = dm.entries.iter().find(|e| !e.pass).map(|e| format!("{}: {:?}", e.name, e.witness));
    r.check(&format!("topology {name}"), "De Morgan on sheaves", &hyps, dm.pass, w);
    r.results.insert("de_morgan".into(), json!(dm));
    r.results
        .insert("hypotheses".into(), json!(hyps.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>()));
    Ok(())
}

fn family(ws: &Workspace, omega: &Omega, name: &str, r: &mut Report) -> Result<()> {
    let fam = ws.family(omega, name)?;
    let a = family_audit(omega, &fam, None, &ws.caps)?;
    let scope = format!("family {name}");
    let w = first_witness(&a.topology.witnesses);
    r.check(&scope, "family compatibility", &[], a.validation.valid, None);
    r.check(&scope, "translation is weak and productive", &[], a.topology.weak && a.topology.productive, w.clone());
    r.check(
        &scope,
        "idempotent family gives a topology",
        &[("idempotent_family", a.all_idempotent)],
        a.topology.topology,
        w,
    );
    r.check(&scope, "duplication law", &[("idempotent", a.topology.idempotent)], a.duplication_law, None);
    r.check(&scope, "covers formula matches", &[], a.grothendieck_matches, None);
    r.check(&scope, "closure formula matches", &[], a.closure_matches, None);
    let alpha = fam.alpha(omega)?;
    let mut eqs = BTreeMap::new();
    for (n, cl) in &ws.classes {
        let e = MonoidOnM::new(omega, cl)?.equivariance(omega, &alpha);
        let w = e.witness.as_ref().map(|w| format!("{w:?}"));
        r.check(&scope, &format!("action preserving for {n}"), &[], e.equivariant, w);
        eqs.insert(n.clone(), e);
    }
    r.results.insert(scope, json!({ "audit": a, "equivariance": eqs }));
    Ok(())
}

fn full_audit(ws: &Workspace, omega: &Omega, r: &mut Report) -> Result<()> {
    let cat = &ws.cat;
    for c in [Command::Validate, Command::Omega, Command::Ideals] {
        r.absorb(run_with(ws, omega, &c)?);
    }
    let mut ideals: Vec<(String, Ideal)> = ws.ideals.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    for (k, i) in enumerate_ideals(omega, &ws.caps)?.into_iter().enumerate() {
        if !ws.ideals.values().any(|v| *v == i) {
            ideals.push((format!("#{k}"), i));
        }
    }
    let mut sub = Report::new(&Command::FullAudit);
    sub.command = "ideal-audits".into();
    for (n, i) in &ideals {
        ideal_audit(ws, omega, n, i, &mut sub)?;
    }
    r.absorb(sub);
    let mut classes: Vec<(String, AdmissibleClass)> = ws.classes.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    if cat.is_finitely_complete() {
        for (k, c) in enumerate_admissible_classes(cat, &ws.caps)?.into_iter().enumerate() {
            if !ws.classes.values().any(|v| *v == c) {
                classes.push((format!("#{k}"), c));
            }
        }
    }
    let mut sub = Report::new(&Command::FullAudit);
    sub.command = "class-audits".into();
    for (n, c) in &classes {
        admissible_audit(ws, omega, n, c, &mut sub)?;
        action_audit(ws, omega, n, c, &ideals, &mut sub)?;
    }
    r.absorb(sub);
    for n in ws.ideals.keys() {
        r.absorb(run_with(ws, omega, &Command::DeMorgan(n.clone()))?);
    }
    for n in ws.families.keys() {
        r.absorb(run_with(ws, omega, &Command::FamilyAudit(n.clone()))?);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workspace::{fixture_workspaces, Workspace};

    fn load(name: &str) -> Workspace {
        let f = fixture_workspaces().into_iter().find(|(n, _)| *n == name).unwrap().1;
        Workspace::from_file(&f, &[]).unwrap()
    }

    #[test]
    fn commands_parse() {
        assert_eq!(Command::parse("ideal-audit I'").unwrap(), Command::IdealAudit("I'".into()));
        assert_eq!(Command::parse("equivariance ¬¬ M").unwrap(), Command::Equivariance("¬¬".into(), "M".into()));
        assert!(Command::parse("ideals extra").is_err());
        for c in ["validate", "omega", "ideals", "full-audit", "demorgan I", "family-audit F"] {
            assert_eq!(Command::parse(c).unwrap().line(), c);
        }
    }

    #[test]
    fn l3_equivariance() {
        let ws = load("l3");
        let r = run(&ws, &Command::Equivariance("¬¬".into(), "M".into())).unwrap();
        assert!(r.pass);
        assert_eq!(r.results["equivariance"]["equivariant"], json!(true));
    }

    #[test]
    fn gamma_demorgan_reports_hypotheses() {
        let ws = load("gamma");
        let r = run(&ws, &Command::DeMorgan("j^I'".into())).unwrap();
        assert_eq!(r.results["hypotheses"]["right_ore"], json!(false));
        assert!(r.pass);
    }

    #[test]
    fn unknown_names() {
        let ws = load("l3");
        assert!(matches!(run(&ws, &Command::IdealAudit("nope".into())), Err(Error::UnknownName(_))));
        assert!(matches!(run(&ws, &Command::DeMorgan("nope".into())), Err(Error::UnknownName(_))));
    }

    #[test]
    fn full_audit_on_fixtures() {
        for (name, f) in fixture_workspaces() {
            let ws = Workspace::from_file(&f, &[]).unwrap();
            let r = run(&ws, &Command::FullAudit).unwrap();
            assert!(r.pass, "{name}:\n{}", r.to_text());
            assert_eq!(r.to_json(), run(&ws, &Command::FullAudit).unwrap().to_json());
        }
    }
}
