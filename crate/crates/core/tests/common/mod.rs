//! Seeded parameter draws shared by the integration tests.
#![allow(dead_code)]

use radial_plap::{ClosedFormFamily, FamilyId, NonlinearTerm, Problem};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn between(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..=hi)
}

/// A valid member of `id` with randomized parameters whose source term
/// `|λ r^α f(u)|` stays at most `max_source` on `grid`.
pub fn draw_family_within(
    id: FamilyId,
    rng: &mut ChaCha8Rng,
    grid: &[f64],
    max_source: f64,
) -> ClosedFormFamily<f64> {
    loop {
        let fam = draw_family(id, rng);
        let pr = fam.problem();
        let within = grid.iter().all(|&r| {
            fam.eval_u(r).is_ok_and(|u| {
                (pr.lambda() * r.powf(pr.alpha()) * pr.f_unchecked(u)).abs() <= max_source
            })
        });
        if within {
            return fam;
        }
    }
}

/// A valid member of `id` with randomized parameters.
pub fn draw_family(id: FamilyId, rng: &mut ChaCha8Rng) -> ClosedFormFamily<f64> {
    loop {
        let made = match id {
            FamilyId::F1 => ClosedFormFamily::weighted_critical(
                between(rng, 3.0, 6.0),
                between(rng, -0.9, 3.0),
                between(rng, 0.2, 3.0),
            ),
            FamilyId::F2 => {
                let (n, alpha) = (between(rng, 3.0, 6.0), between(rng, -0.9, 3.0));
                let top = (n + alpha) / (n - 2.0);
                ClosedFormFamily::minus_two_power(n, alpha, between(rng, 1.05, top - 0.05))
            }
            FamilyId::F3 => {
                let (n, alpha) = (between(rng, 3.0, 6.0), between(rng, -0.9, 3.0));
                let low = (n + alpha) / (n - 2.0);
                ClosedFormFamily::lin_ni(n, alpha, low + between(rng, 0.1, 4.0))
            }
            FamilyId::F4 => {
                ClosedFormFamily::bratu_2d(between(rng, 0.1, 5.0), between(rng, 0.1, 5.0))
            }
            FamilyId::F5 => {
                ClosedFormFamily::exp_pair(between(rng, 1.2, 6.0), between(rng, 0.05, 5.0))
            }
            FamilyId::F6 => {
                let n = between(rng, 2.5, 6.0);
                let p = between(rng, 1.25, 4.0_f64.min(n - 0.3));
                ClosedFormFamily::plap_critical(n, p, between(rng, 0.2, 3.0))
            }
            FamilyId::F7 => {
                let n = between(rng, 2.5, 6.0);
                let p = between(rng, 1.25, 4.0_f64.min(n - 0.3));
                let low = (p - 1.0).max((n * p - n) / (n - p));
                ClosedFormFamily::plap_lin_ni(n, p, low + between(rng, 0.1, 3.0))
            }
            FamilyId::F8 => ClosedFormFamily::bratu_pn(
                between(rng, 2.0, 5.0),
                between(rng, 0.2, 3.0),
                between(rng, 0.1, 5.0),
            ),
            FamilyId::F9 => {
                ClosedFormFamily::weighted_bratu(between(rng, -0.9, 3.0), between(rng, -2.0, 2.0))
            }
            FamilyId::F10 => ClosedFormFamily::coulomb_bratu(between(rng, -2.0, 2.0)),
        };
        if let Ok(fam) = made {
            return fam;
        }
    }
}

/// `(n, p, α)` for change-of-variables round trips.
pub fn draw_geometry(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    (
        between(rng, 2.0, 6.0),
        between(rng, 1.25, 4.0),
        between(rng, -0.9, 3.0),
    )
}

/// A smooth nonlinearity that is positive everywhere, so shots from any
/// height are defined.
pub fn smooth_terms(rng: &mut ChaCha8Rng) -> Vec<NonlinearTerm<f64>> {
    vec![
        NonlinearTerm::exponential(between(rng, 0.2, 1.5), between(rng, 0.2, 1.0)),
        NonlinearTerm::exponential(between(rng, 0.1, 0.5), -between(rng, 0.2, 1.0)),
    ]
}

pub fn power_sum(n: f64, alpha: f64, powers: &[f64]) -> Problem {
    let terms = powers
        .iter()
        .map(|&q| NonlinearTerm::power(1.0, q))
        .collect();
    Problem::laplacian(n, alpha, terms).expect("valid power problem")
}
