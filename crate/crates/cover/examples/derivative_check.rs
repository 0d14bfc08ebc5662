//! Spot-checks the exact gradient and Hessian of G against central finite
//! differences on random non-degenerate configurations of each built-in
//! instance.

use cover::cli::{fd_errors, sample_screened_configs};
use cover::instances::{get_instance, INSTANCE_NAMES};

fn main() {
    for name in INSTANCE_NAMES {
        let region = get_instance(name).unwrap();
        let mut max_grad = 0.0_f64;
        let mut max_hess = 0.0_f64;
        for (k, cfg) in sample_screened_configs(&region, 5, 1234, 6).iter().enumerate() {
            let (ge, he) = fd_errors(&region, cfg).unwrap();
            max_grad = max_grad.max(ge);
            max_hess = max_hess.max(he);
            println!("{name:16} cfg {k}: grad err {ge:.2e}, hess err {he:.2e}");
        }
        assert!(max_grad <= 1e-6 && max_hess <= 1e-5, "{name}: FD mismatch");
    }
    println!("all derivative checks passed");
}
