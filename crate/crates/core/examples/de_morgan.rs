//! De Morgan's law in the closed-subobject algebras of sheaves.

use presheaf_topos::ideals::Ideal;
use presheaf_topos::omega::{curated_candidates, de_morgan_check, double_negation, Omega};
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let caps = Caps::default();
    for (name, cat) in fixtures::zoo() {
        let om = Omega::new(&cat, &caps)?;
        for (label, j) in [("¬¬", double_negation(&om)), ("j^y", Ideal::yoneda(&cat).weak_topology(&om))] {
            let report = de_morgan_check(&om, &j, &curated_candidates(&om, &j, &caps), &caps)?;
            let sheaves = report.entries.iter().filter(|e| e.sheaf).count();
            println!(
                "{name:>8} {label:>3}: right Ore {}, {sheaves} sheaves checked, De Morgan {}",
                cat.is_right_ore(),
                report.pass
            );
        }
    }
    Ok(())
}
