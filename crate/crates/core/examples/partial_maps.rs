//! Partial maps with domains in an admissible class.

use presheaf_topos::admissible::{partial_map_category_check, AdmissibleClass, PartialMap};
use presheaf_topos::omega::Omega;
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let d = fixtures::diamond();
    let om = Omega::new(&d, &Caps::default())?;
    let monos = AdmissibleClass::all_monos(&d)?;

    // partial maps 1 ⇀ 1 defined on a and on b; the composite lives on 0
    let p = PartialMap { domain: d.morphism("a<=1")?, map: d.morphism("a<=1")? };
    let q = PartialMap { domain: d.morphism("b<=1")?, map: d.morphism("b<=1")? };
    let pq = p.then(&d, &q)?;
    println!("{} ; {} = {}", p.format(&d), q.format(&d), pq.format(&d));

    // the components must share a domain
    let bad = PartialMap { domain: d.morphism("b<=1")?, map: d.morphism("id_1")? };
    println!("malformed: {}", p.then(&d, &bad).unwrap_err());

    let check = partial_map_category_check(&om, monos.arrows())?;
    println!("partial maps form a category: {}", check.pass());
    Ok(())
}
