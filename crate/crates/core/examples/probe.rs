use sphaerica::optimize::*;
use std::f64::consts::PI;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("tammes12");
    let cfg = OptimizerConfig::default();
    match which {
        "tammes12" => {
            let t0 = Instant::now();
            let r = tammes_solve(12, &cfg).unwrap();
            let target = (1.0 / 5.0_f64.sqrt()).acos();
            println!("N=12 psi={:.12} target={:.12} err={:.3e} restart={} time={:?}",
                r.psi, target, (r.psi - target).abs(), r.best_restart, t0.elapsed());
        }
        "antipodal" => {
            for (m, target) in [(2usize, PI/2.0), (3, PI/2.0), (4, (1.0f64/3.0).acos()), (5, (1.0/5.0f64.sqrt()).acos()), (6, (1.0/5.0f64.sqrt()).acos())] {
                let t0 = Instant::now();
                let r = antipodal_solve(m, &cfg).unwrap();
                println!("M={} psi={:.12} err={:.3e} time={:?}", m, r.psi, (r.psi - target).abs(), t0.elapsed());
            }
        }
        "hemi" => {
            let t0 = Instant::now();
            let out = hemisphere_code_search(9, PI / 3.0, &cfg).unwrap();
            println!("count=9 psi={:.12} target={:.12} feasible={} err={:.3e} time={:?}",
                out.result.psi, PI/3.0, out.feasible, (out.result.psi - PI/3.0).abs(), t0.elapsed());
            let t0 = Instant::now();
            let out10 = hemisphere_code_search(10, PI / 3.0, &cfg).unwrap();
            println!("count=10 psi={:.12} feasible={} time={:?}", out10.result.psi, out10.feasible, t0.elapsed());
        }
        "k12" => {
            let t0 = Instant::now();
            let out = max_contacts(12, Some(PI / 3.0), &cfg).unwrap();
            println!("K_12(60deg) = {} (psi={:.9}) time={:?}", out.contact_count, out.result.psi, t0.elapsed());
        }
        "k7" => {
            let t0 = Instant::now();
            let out = max_contacts(7, None, &cfg).unwrap();
            println!("K_7 = {} at d={:.9} time={:?}", out.contact_count, out.contact_distance, t0.elapsed());
        }
        "k10" => {
            let t0 = Instant::now();
            let out = max_contacts(10, None, &cfg).unwrap();
            println!("K_10 = {} at d={:.9} time={:?}", out.contact_count, out.contact_distance, t0.elapsed());
        }
        "k11" => {
            let t0 = Instant::now();
            let out = max_contacts(11, None, &cfg).unwrap();
            println!("K_11 = {} at d={:.9} time={:?}", out.contact_count, out.contact_distance, t0.elapsed());
        }
        _ => eprintln!("unknown probe"),
    }
}
