use std::sync::OnceLock;

use proptest::prelude::*;

use ramlock::localfield::towers::RadicalTower;
use ramlock::localfield::{standard_field, LocalField};
use ramlock::phimodule::{
    automorphisms, count_points, curated_candidates, galois_action, orbits, solve_points, Filtration,
    PointSystem, SigmaPoly, SolveOptions, TorsionPhiModule,
};
use ramlock::witt::AbarRing;
use ramlock::Error;

fn setup() -> &'static (RadicalTower, Vec<LocalField>) {
    static S: OnceLock<(RadicalTower, Vec<LocalField>)> = OnceLock::new();
    S.get_or_init(|| {
        let k = standard_field(3, 1, 8).unwrap();
        curated_candidates(&k, 1).unwrap()
    })
}

fn opts() -> SolveOptions {
    SolveOptions { budget: 500, ..SolveOptions::default() }
}

/// Seed spaces past the budget are skipped rather than searched.
macro_rules! within_budget {
    ($e:expr) => {
        match $e {
            Err(Error::BudgetExceeded { .. }) => return Err(TestCaseError::reject("seed space over budget")),
            other => other.unwrap(),
        }
    };
}

fn coefficient() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "1", "-1", "2", "4", "1 + u", "-1 + 3*u", "1 + Y", "2 - u*Y", "-1 + 3", "1 + u^2",
    ])
    .prop_map(str::to_string)
}

fn rank_one() -> impl Strategy<Value = TorsionPhiModule> {
    (0u32..2, coefficient(), 0u32..2).prop_filter_map("valid module", |(r, c, ex)| {
        let ex = ex.min(r);
        let c = vec![vec![SigmaPoly::parse(&c).ok()?]];
        let m = TorsionPhiModule::new(1, 1, r, Filtration::Exponents(vec![ex]), c, 1).ok()?;
        m.check_for_prime(3).ok()?;
        Some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// At most p^d points, and a full count persists in the larger candidate.
    #[test]
    fn count_bound_and_stability(m in rank_one()) {
        let (tower, cands) = setup();
        let opts = opts();
        let mut counts = Vec::new();
        for f in cands {
            let ring = AbarRing::from_tower(tower, f, m.r()).unwrap();
            counts.push(within_budget!(count_points(&m, &ring, &opts)));
        }
        prop_assert!(counts.iter().all(|&c| c <= 3));
        prop_assert!(counts[1] >= counts[0]);
        if counts[0] == 3 {
            prop_assert_eq!(counts[1], 3);
        }
    }

    /// Points over F_n stay points over the extension, and distinct ones stay distinct.
    #[test]
    fn inclusion_maps_points_injectively(m in rank_one()) {
        let (tower, cands) = setup();
        let opts = opts();
        let small = AbarRing::from_tower(tower, &cands[0], m.r()).unwrap();
        let large = AbarRing::from_tower(tower, &cands[1], m.r()).unwrap();
        let below = within_budget!(solve_points(&m, &small, &opts));
        let sys = PointSystem::new(&m, &large).unwrap();
        let lifted: Vec<Vec<_>> = below
            .lifts
            .iter()
            .map(|t| t.iter().map(|w| w.embed(&cands[1]).unwrap()).collect())
            .collect();
        for t in &lifted {
            prop_assert!(sys.verify(t).unwrap());
        }
        for i in 0..lifted.len() {
            for j in i + 1..lifted.len() {
                prop_assert!(!sys.same_point(&lifted[i], &lifted[j]).unwrap());
            }
        }
    }

    /// The Galois group of the quadratic candidate over F_n permutes the points.
    #[test]
    fn galois_action_is_a_group_action(m in rank_one()) {
        let (tower, cands) = setup();
        let ring = AbarRing::from_tower(tower, &cands[1], m.r()).unwrap();
        let sols = within_budget!(solve_points(&m, &ring, &opts()));
        let auts = automorphisms(&cands[1], &tower.field).unwrap();
        prop_assert_eq!(auts.len(), 2);
        let perms: Vec<Vec<usize>> = auts
            .iter()
            .map(|s| galois_action(&m, &ring, &sols, s).unwrap())
            .collect();
        let n = sols.count();
        for (s, perm) in auts.iter().zip(&perms) {
            let mut seen = perm.clone();
            seen.sort();
            prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
            // the square of each element is the identity, so its permutation is an involution
            prop_assert!(s.compose(s).unwrap().is_identity().unwrap());
            prop_assert!((0..n).all(|i| perm[perm[i]] == i));
        }
        for orbit in orbits(n, &perms) {
            prop_assert_eq!(2 % orbit.len(), 0);
        }
    }
}

#[test]
fn rank_two_diagonal_counts_multiply() {
    let (tower, cands) = setup();
    let diag = |a: &str, b: &str| {
        vec![
            vec![SigmaPoly::parse(a).unwrap(), SigmaPoly::constant(0)],
            vec![SigmaPoly::constant(0), SigmaPoly::parse(b).unwrap()],
        ]
    };
    let one = |c: &str, r: u32| {
        TorsionPhiModule::new(1, 1, r, Filtration::Exponents(vec![r]), vec![vec![SigmaPoly::parse(c).unwrap()]], 1)
            .unwrap()
    };
    let opts = SolveOptions::default();
    for (a, b) in [("1", "-1"), ("-1", "-1"), ("1", "1")] {
        let m = TorsionPhiModule::new(2, 1, 1, Filtration::Exponents(vec![1, 1]), diag(a, b), 1).unwrap();
        for f in cands {
            let ring = AbarRing::from_tower(tower, f, 1).unwrap();
            let both = count_points(&m, &ring, &opts).unwrap();
            let pa = count_points(&one(a, 1), &ring, &opts).unwrap();
            let pb = count_points(&one(b, 1), &ring, &opts).unwrap();
            assert_eq!(both, pa * pb, "C = diag({a}, {b}) over {}", f.name());
            assert!(both <= 9);
        }
    }
}
