//! Admissible classes, the presheaf M, and the class topology j_M.

use presheaf_topos::admissible::{enumerate_admissible_classes, j_sub, AdmissibleClass, Mu};
use presheaf_topos::omega::{double_negation, Omega};
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let caps = Caps::default();
    let l3 = fixtures::l3();
    let om = Omega::new(&l3, &caps)?;

    let classes = enumerate_admissible_classes(&l3, &caps)?;
    println!("{} admissible classes on the chain", classes.len());

    let m = AdmissibleClass::from_names(&l3, &fixtures::L3_CLASS)?;
    let mu = Mu::new(&om, &m)?;
    for c in l3.objects() {
        let reps: Vec<&str> = mu.m.reps(c).iter().map(|&r| l3.mor_name(r)).collect();
        println!("M({}) = {reps:?}", l3.obj_name(c));
    }
    println!("μ natural {}, injective {}", mu.is_natural(&om), mu.is_injective(&om));

    let jm = mu.topology(&om);
    let js = j_sub(&om)?;
    let nn = double_negation(&om);
    println!("j_M ≤ j_Sub: {}, j_Sub = ¬¬: {}", jm.le(&om, &js), js == nn);
    Ok(())
}
