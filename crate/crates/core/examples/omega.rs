//! Sieves, the subobject classifier and its restriction maps.

use presheaf_topos::omega::{double_negation, parse_sieve, Omega};
use presheaf_topos::{fixtures, Caps};

fn main() -> presheaf_topos::Result<()> {
    let g = fixtures::gamma();
    let om = Omega::new(&g, &Caps::default())?;
    for c in g.objects() {
        let all: Vec<String> = (0..om.size(c)).map(|i| om.format(c, i)).collect();
        println!("Ω({}) has {} sieves: {}", g.obj_name(c), om.size(c), all.join(" "));
    }

    let a = g.object("A")?;
    let s = parse_sieve(&g, a, &["s"])?;
    let i = om.index_of(a, &s).expect("a sieve");
    let back = om.restrict(g.morphism("s")?, i);
    println!("s*({}) = {}", om.format(a, i), om.format(g.object("N")?, back));

    let nn = double_negation(&om);
    println!("¬¬{} = {}", om.format(a, i), om.format(a, nn.at(a, i)));
    Ok(())
}
