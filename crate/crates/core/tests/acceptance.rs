use std::process::ExitCode;
use std::time::{Duration, Instant};

use theta_kit::verify::{self, Check};

struct Criterion {
    id: usize,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Vec<Check>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "Γ laws and pullback universal property",
            limit: Some(Duration::from_secs(30)),
            run: || vec![verify::gamma_laws(3), verify::gamma_pullback_universal(3, 3)],
        },
        Criterion { id: 2, title: "Θ laws and hom closure", limit: Some(Duration::from_secs(60)), run: || vec![verify::theta_laws(3)] },
        Criterion { id: 3, title: "globular sum round trip", limit: None, run: || vec![verify::globular_round_trip(6)] },
        Criterion {
            id: 4,
            title: "skeletal factorization and coface chains",
            limit: None,
            run: || vec![verify::skeletal_factorization(4)],
        },
        Criterion { id: 5, title: "coface fiber products", limit: None, run: || vec![verify::coface_pullbacks(4, 3)] },
        Criterion { id: 6, title: "boundary coequalizer", limit: None, run: || vec![verify::boundary_coequalizer(4)] },
        Criterion {
            id: 7,
            title: "K_p splittings and adjunction",
            limit: None,
            run: || vec![verify::collapse_splittings(4, 4), verify::collapse_adjunction(4, 4)],
        },
        Criterion { id: 8, title: "E naturality", limit: None, run: || vec![verify::eckmann_hilton_naturality(3)] },
        Criterion { id: 9, title: "Σ_J census", limit: None, run: || vec![verify::suspension_census(3, 4)] },
        Criterion { id: 10, title: "Σ_J preserves monos", limit: None, run: || vec![verify::suspension_monos(3)] },
        Criterion {
            id: 11,
            title: "Σ_J ⊣ Ω",
            limit: None,
            run: || {
                assert!(verify::adjunction_family().len() >= 10);
                vec![verify::suspension_adjunction()]
            },
        },
        Criterion {
            id: 12,
            title: "comparison map",
            limit: None,
            run: || vec![verify::comparison_descends(2), verify::comparison_naturality(2), verify::comparison_agreement()],
        },
        Criterion {
            id: 13,
            title: "Σ_K, Δ_st and the sphere spectrum",
            limit: None,
            run: || {
                vec![
                    verify::sigma_k_face_pattern(4),
                    verify::stable_congruence(2, 3),
                    verify::stable_associativity(2, 2),
                    verify::sphere_spectrum(3),
                ]
            },
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let checks = (c.run)();
        let elapsed = start.elapsed();
        let slow = c.limit.is_some_and(|l| elapsed > l);
        let ok = !slow && checks.iter().all(Check::passed);
        println!("{} criterion {:>2}: {} [{:.2?}]", if ok { "PASS" } else { "FAIL" }, c.id, c.title, elapsed);
        for check in &checks {
            println!("    {check}");
        }
        if slow {
            println!("    over the time limit of {:?}", c.limit.expect("set"));
        }
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
