//! Ideals of the Yoneda embedding and their weak topologies.

use std::collections::BTreeMap;

use presheaf_topos::ideals::{enumerate_ideals, Ideal};
use presheaf_topos::omega::{check_weak_topology, double_negation, Omega};
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let caps = Caps::default();
    let g = fixtures::gamma();
    let om = Omega::new(&g, &caps)?;

    let all = enumerate_ideals(&om, &caps)?;
    println!("{} ideals on the graph category", all.len());
    for i in &all {
        let t = check_weak_topology(&om, &i.weak_topology(&om));
        println!("  {:?} idempotent={} topology={}", i.to_names(&g), i.is_idempotent(&g), t.topology);
    }

    let parts = BTreeMap::from([
        ("N".to_string(), vec!["id_N".to_string()]),
        ("A".to_string(), vec!["s".to_string(), "t".to_string()]),
    ]);
    let i = Ideal::from_names(&g, &parts)?;
    let a = g.object("A")?;
    println!("covers of A: {:?}", i.grothendieck(&om).format(&om, a));
    println!("j^I below ¬¬: {}", i.weak_topology(&om).le(&om, &double_negation(&om)));
    Ok(())
}
