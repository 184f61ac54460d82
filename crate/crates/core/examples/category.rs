//! Build categories from descriptions and generators, then inspect limits.

use presheaf_topos::fincat::{validate_category, CategoryDescription, CompositeSpec, MorphismSpec};
use presheaf_topos::{fixtures, FinCat};

fn main() -> presheaf_topos::Result<()> {
    // a walking arrow a -> b, written out by hand
    let desc = CategoryDescription {
        objects: vec!["a".into(), "b".into()],
        morphisms: vec![MorphismSpec { name: "f".into(), dom: "a".into(), cod: "b".into() }],
        ..Default::default()
    };
    let arrow = FinCat::new(&desc)?;
    println!("arrow: {} objects, {} morphisms", arrow.num_objects(), arrow.num_morphisms());

    // a missing composite is reported, not panicked on
    let mut broken = fixtures::l3_description();
    broken.composition.retain(|c: &CompositeSpec| c.gf != "x<=1");
    let report = validate_category(&broken)?;
    println!("broken chain valid: {}, first violation: {:?}", report.is_valid(), report.violations.first());

    for (name, cat) in fixtures::zoo() {
        let p = cat.structural_predicates(None);
        println!("{name:>8}: {p:?}");
    }

    let d = fixtures::diamond();
    let (a, b) = (d.morphism("a<=1")?, d.morphism("b<=1")?);
    let sq = d.try_pullback(a, b)?;
    println!("pullback of a<=1, b<=1 has apex {}", d.obj_name(sq.apex));
    Ok(())
}
