use mor::bench::{bench_run, OPS};
use mor::ff::FieldParams;
use mor::ut::UTParams;

#[test]
fn medians_stable_when_trials_double() {
    let sizes = [
        UTParams::new(FieldParams::prime(1297).unwrap(), 2).unwrap(),
        UTParams::new(FieldParams::prime(7).unwrap(), 3).unwrap(),
    ];
    let a = bench_run(&sizes, 10).unwrap();
    let b = bench_run(&sizes, 20).unwrap();
    for g in &sizes {
        for op in OPS {
            let x = a.median(g.n(), op).unwrap().max(1) as f64;
            let y = b.median(g.n(), op).unwrap().max(1) as f64;
            let ratio = if x > y { x / y } else { y / x };
            assert!(ratio <= 3.0, "n = {}, {op}: {x} ns vs {y} ns", g.n());
        }
    }
}
