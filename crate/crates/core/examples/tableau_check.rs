//! Classify the builtin IMEX pairs and check their order conditions, then
//! parse a pair from text.

use imex_relax::tableaux::{builtin, builtin_names, check_additional_order, check_order, parse_pair};

const MIDPOINT: &str = "
# implicit-explicit midpoint with an explicit first stage
explicit:
0   0
1/2 0
b: 0 1
c: 0 1/2
implicit:
0 0
0 1/2
b: 0 1
c: 0 1/2
";

fn main() {
    for name in builtin_names() {
        let p = builtin(name).unwrap();
        let order = check_order(&p, p.declared_order).unwrap();
        let extra = check_additional_order(&p, 2).unwrap();
        println!(
            "{:<10} {:?} GSA={} order {} ok={} additional ok={}",
            p.label(),
            p.classify().unwrap(),
            p.is_gsa(),
            p.declared_order,
            order.iter().all(|c| c.satisfied),
            extra.iter().all(|c| c.satisfied),
        );
    }

    let p = parse_pair("midpoint", MIDPOINT).unwrap();
    println!("\n{} ({:?}, GSA={})", p.label(), p.classify().unwrap(), p.is_gsa());
    for c in check_order(&p, 2).unwrap() {
        println!("  {:<8} {:+.6} (want {:+.6})", c.condition_id, c.value, c.expected);
    }
}
