//! Runs the deterministic multistart on a built-in instance and prints a
//! result row. Usage: multistart_instance [NAME] [M] [TRIALS] [SEED]

use cover::instances::get_instance;
use cover::multistart::run_multistart;
use cover::optimize::{ALParams, SolveStatus};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "minkowski".into());
    let m: usize = args.next().map(|s| s.parse().unwrap()).unwrap_or(3);
    let trials: usize = args.next().map(|s| s.parse().unwrap()).unwrap_or(20);
    let seed: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(1);

    let region = get_instance(&name).unwrap();
    let rep = run_multistart(&region, m, trials, seed, &ALParams::default()).unwrap();
    let conv = rep
        .summaries
        .iter()
        .filter(|s| s.status == SolveStatus::Converged)
        .count();
    println!(
        "{name} m={m}: r = {:.17} (trial {}, {conv}/{trials} converged, {:.1}s)",
        rep.best.cfg.radius, rep.best_trial, rep.wall_time
    );
    println!("|G| = {:.2e}, kkt = {:.2e}", rep.best.kkt_feas, rep.best.kkt_opt);
}
