//! Weak topologies: flags, closures, dense/closed subobjects and sheaves.

use presheaf_topos::omega::{
    check_weak_topology, classify_subobject, closure_from_j, double_negation, grothendieck_from_j, sheaf_check, Omega,
    OmegaEndo,
};
use presheaf_topos::presheaf::Presheaf;
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let caps = Caps::default();
    let l3 = fixtures::l3();
    let om = Omega::new(&l3, &caps)?;

    for (name, j) in
        [("id", OmegaEndo::identity(&om)), ("true", OmegaEndo::constant_true(&om)), ("¬¬", double_negation(&om))]
    {
        let t = check_weak_topology(&om, &j);
        println!("{name:>4}: weak={} productive={} topology={}", t.weak, t.productive, t.topology);
    }

    let nn = double_negation(&om);
    let one = l3.object("1")?;
    let y1 = Presheaf::yoneda(&l3, one);
    for g in y1.enumerate_subpresheaves(&l3, &caps)? {
        let cl = closure_from_j(&om, &nn, &y1, &g);
        println!("{:>2} -> {:>2} elements, {:?}", g.count(), cl.count(), classify_subobject(&om, &nn, &y1, &g));
    }

    let jt = grothendieck_from_j(&om, &nn);
    let st = sheaf_check(&om, &Presheaf::terminal(&l3), &jt);
    println!("terminal presheaf is a ¬¬-sheaf: {}", st.sheaf);
    Ok(())
}
