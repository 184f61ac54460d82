//! Translation families and the weak topologies they induce.

use std::collections::BTreeMap;

use presheaf_topos::action::{family_audit, TranslationFamily};
use presheaf_topos::admissible::AdmissibleClass;
use presheaf_topos::omega::Omega;
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let caps = Caps::default();
    let l3 = fixtures::l3();
    let om = Omega::new(&l3, &caps)?;
    let names: BTreeMap<String, String> =
        fixtures::L3_FAMILY.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let fam = TranslationFamily::from_names(&om, &names)?;
    let m = AdmissibleClass::from_names(&l3, &fixtures::L3_CLASS)?;

    let audit = family_audit(&om, &fam, Some(&m), &caps)?;
    println!("valid {}, topology {:?}", audit.validation.valid, audit.topology.topology);
    println!("equivariant {:?}", audit.equivariance.map(|e| e.equivariant));

    let alpha = fam.alpha(&om)?;
    let one = l3.object("1")?;
    for i in 0..om.size(one) {
        println!("α({}) = {}", om.format(one, i), om.format(one, alpha.at(one, i)));
    }

    // f_y = id_y is not compatible with f_x = id_x and f_1 = x<=1
    let mut bad = names.clone();
    bad.insert("y".into(), "id_y".into());
    if let Err(e) = TranslationFamily::from_names(&om, &bad) {
        println!("rejected: {e}");
    }
    Ok(())
}
