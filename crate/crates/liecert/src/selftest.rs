//! Built-in sanity suites over small fixtures: run on demand from the CLI
//! to confirm a build's algebra core before trusting a long verification.

use crate::liealg::{build_algebra, Element, LieAlgebra};
use crate::mvpoly::{self, MultiPoly};
use crate::propp::{self, VerifyOptions};
use crate::ratmat::{rat_int, Rat};
use crate::rootsystem::{build_root_system, SimpleType};
use crate::sl2::{self, Characteristic};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use std::time::Instant;

/// Deliberate defects for exercising the failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    CorruptStructureConstants,
}

#[derive(Debug)]
pub struct SelftestOutcome {
    pub passed: Vec<&'static str>,
    /// (suite name, what failed)
    pub failures: Vec<(&'static str, String)>,
    pub elapsed_ms: u64,
}

impl SelftestOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn algebra(name: &str) -> LieAlgebra {
    build_algebra(build_root_system(SimpleType::parse(name).unwrap()))
}

fn jacobi_suite(fault: Option<Fault>) -> Result<(), String> {
    for name in ["A2", "G2"] {
        let mut lie = algebra(name);
        if name == "A2" && fault == Some(Fault::CorruptStructureConstants) {
            lie.corrupt_structure_constant_for_tests();
        }
        let dim = lie.dim();
        for i in 0..dim {
            let bi = Element::basis_vector(i);
            for j in (i + 1)..dim {
                let bj = Element::basis_vector(j);
                for k in (j + 1)..dim {
                    let bk = Element::basis_vector(k);
                    let s = lie
                        .bracket(&lie.bracket(&bi, &bj), &bk)
                        .add(&lie.bracket(&lie.bracket(&bj, &bk), &bi))
                        .add(&lie.bracket(&lie.bracket(&bk, &bi), &bj));
                    if !s.is_zero() {
                        return Err(format!("{name}: Jacobi fails on basis triple ({i},{j},{k})"));
                    }
                }
            }
        }
    }
    // Random sparse triples on F4 with a fixed seed.
    let lie = algebra("F4");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
    for round in 0..200 {
        let mut rand_elem = || {
            Element::from_terms((0..4).map(|_| {
                (
                    rng.random_range(0..lie.dim()),
                    rat_int(rng.random_range(-3..=3i64)),
                )
            }))
        };
        let a = rand_elem();
        let b = rand_elem();
        let c = rand_elem();
        let s = lie
            .bracket(&lie.bracket(&a, &b), &c)
            .add(&lie.bracket(&lie.bracket(&b, &c), &a))
            .add(&lie.bracket(&lie.bracket(&c, &a), &b));
        if !s.is_zero() {
            return Err(format!("F4: Jacobi fails on random triple {round}"));
        }
    }
    Ok(())
}

fn sl2_suite() -> Result<(), String> {
    // Toy A1 plus the smallest catalog orbit of F4.
    let fixtures: [(&str, Vec<i64>); 2] = [("A1", vec![2]), ("F4", vec![2, 2, 0, 2])];
    for (name, labels) in fixtures {
        let lie = algebra(name);
        let c = Characteristic { labels };
        let h = sl2::cartan_from_characteristic(&lie, &c).map_err(|e| e.to_string())?;
        let e = sl2::choose_e(&lie, &h).map_err(|e| e.to_string())?;
        let t = sl2::complete_triple(&lie, &h, &e).map_err(|e| e.to_string())?;
        if !sl2::verify_triple(&lie, &t) {
            return Err(format!("{name}: synthesized triple fails the sl2 relations"));
        }
    }
    Ok(())
}

fn selection_rule_suite() -> Result<(), String> {
    let lie = algebra("F4");
    let c = Characteristic {
        labels: vec![0, 2, 0, 0],
    };
    let out = propp::verify_orbit(&lie, &c, VerifyOptions::default()).map_err(|e| e.to_string())?;
    let lam = propp::lambda_tensor(&lie, &out.triple.f, &out.adapted).map_err(|e| e.to_string())?;
    let weights = out.adapted.weights().to_vec();
    let profile = out.adapted.centre_profile();
    for (&(k_widx, _q, l, _t, j_widx, _p), _) in lam.iter() {
        let m_i = profile[l - 1].weight;
        if weights[k_widx] != weights[j_widx] - m_i + 2 {
            return Err(format!(
                "selection rule violated: m_k = {}, m_j = {}, m_i = {}",
                weights[k_widx], weights[j_widx], m_i
            ));
        }
    }
    if !out.property_holds {
        return Err("F4 orbit 3 failed to certify".into());
    }
    Ok(())
}

fn groebner_vs_gcd_suite() -> Result<(), String> {
    let poly = |terms: &[(&[u32], i64)]| {
        let mut p = MultiPoly::zero(2);
        for (e, c) in terms {
            p.add_term(mvpoly::Monomial(e.to_vec()), rat_int(*c));
        }
        p
    };
    let cases: Vec<(Vec<MultiPoly>, bool)> = vec![
        (vec![MultiPoly::var(2, 0), MultiPoly::var(2, 1)], true),
        (vec![poly(&[(&[2, 0], 1), (&[0, 2], -1)])], false),
        (
            vec![
                poly(&[(&[2, 0], -100), (&[0, 2], -9)]),
                poly(&[(&[1, 1], 10)]),
                poly(&[(&[0, 2], 1)]),
            ],
            true,
        ),
        (
            vec![poly(&[(&[1, 1], 1)]), poly(&[(&[0, 2], 1)])],
            false,
        ),
    ];
    for (idx, (gens, want)) in cases.iter().enumerate() {
        let a = mvpoly::origin_only(gens).map_err(|e| e.to_string())?;
        let b = mvpoly::two_var_gcd_oracle(gens).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("case {idx}: origin_only {a} but gcd oracle {b}"));
        }
        if a != *want {
            return Err(format!("case {idx}: verdict {a}, wanted {want}"));
        }
    }
    // Random nonzero specialization consistency on the third case.
    let gens = &cases[2].0;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
    for _ in 0..100 {
        let mut point = [Rat::from_integer(0.into()), Rat::from_integer(0.into())];
        while point.iter().all(Zero::is_zero) {
            for p in point.iter_mut() {
                *p = rat_int(rng.random_range(-9..=9i64));
            }
        }
        if gens.iter().all(|g| g.evaluate(&point).is_zero()) {
            return Err(format!("origin-only set vanishes at {:?}", point));
        }
    }
    Ok(())
}

type Suite = Box<dyn Fn() -> Result<(), String>>;

/// Run all suites; `fault` injects a deliberate defect so the failure path
/// itself stays tested.
pub fn run(fault: Option<Fault>) -> SelftestOutcome {
    let start = Instant::now();
    let suites: [(&'static str, Suite); 4] = [
        ("jacobi", Box::new(move || jacobi_suite(fault))),
        ("sl2-relations", Box::new(sl2_suite)),
        ("lambda-selection-rule", Box::new(selection_rule_suite)),
        ("groebner-vs-gcd", Box::new(groebner_vs_gcd_suite)),
    ];
    let mut passed = Vec::new();
    let mut failures = Vec::new();
    for (name, suite) in suites {
        match suite() {
            Ok(()) => passed.push(name),
            Err(msg) => failures.push((name, msg)),
        }
    }
    SelftestOutcome {
        passed,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
