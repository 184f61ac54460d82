//! The monoid M acting on Ω, and which topologies preserve the action.

use presheaf_topos::action::{act, equivariance_audit, frame_and_subact_checks, MonoidOnM};
use presheaf_topos::admissible::AdmissibleClass;
use presheaf_topos::ideals::Ideal;
use presheaf_topos::omega::{double_negation, parse_sieve, Omega};
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let l3 = fixtures::l3();
    let om = Omega::new(&l3, &Caps::default())?;
    let m = AdmissibleClass::from_names(&l3, &fixtures::L3_CLASS)?;

    let one = l3.object("1")?;
    let s = parse_sieve(&l3, one, &["x<=1"])?;
    let acted = act(&l3, one, &s, l3.morphism("id_1")?)?;
    println!("{{x<=1}}·id_1 has {} arrows", acted.count());

    let mon = MonoidOnM::new(&om, &m)?;
    println!("monoid laws: {:?}", mon.laws(&l3));
    let e = mon.equivariance(&om, &double_negation(&om));
    println!("¬¬ forward {}, backward {}", e.forward, e.backward);

    let frame = frame_and_subact_checks(&om, &m, &[])?;
    println!("frame and subact checks pass: {}", frame.pass());

    let audit = equivariance_audit(&om, &m, &[("y".into(), Ideal::yoneda(&l3))])?;
    for row in &audit.rows {
        println!("  {:<55} hypothesis {:<5} conclusion {}", row.statement, row.hypothesis, row.conclusion);
    }
    Ok(())
}
