use qhm::*;
use qhm::algebra::*;
use qhm::element::*;

fn main() {
    let p = ManifoldParams::<f64>::desk();
    let g = Grid::desk();
    let band = BandLimit::default_for(&g).with_p_support(g.p_max / 2);
    let a = random_element_banded(p, g, 0, 0.4, band).unwrap();
    let b = random_element_banded(p, g, 50, 0.4, band).unwrap();
    let prod = star(&a, &b).unwrap();
    let lhs = BlockOperator::assemble(&prod);
    let rhs = BlockOperator::assemble(&a).compose(&BlockOperator::assemble(&b));
    println!("sup rhs = {}", rhs.sup_abs());
    println!("max diff = {}", lhs.max_abs_diff(&rhs));
    // locate worst fiber/entry
    let pm = g.p_max as i64;
    let mut worst = (0.0, 0usize, 0usize, 0usize);
    for f in 0..g.nx*g.ny {
        for r in 0..g.n_slices() {
            for c in 0..g.n_slices() {
                let d = (lhs.fibers[f].get(r,c) - rhs.fibers[f].get(r,c)).norm();
                if d > worst.0 { worst = (d, f, r, c); }
            }
        }
    }
    println!("worst {:?}  p={} p'={}", worst, worst.2 as i64 - pm, worst.3 as i64 - pm);
    // single-slice norm check
    for n in [-3i64, 0, 2, 4] {
        let e = random_element_banded(p, g, 99, 0.2, BandLimit::default_for(&g)).unwrap().slice_projection(n);
        let sup = e.slice_sup(n);
        let rep = op_norm_report(&e);
        println!("slice {n}: sup={sup} norm={} converged={}", rep.value, rep.converged);
    }
}
