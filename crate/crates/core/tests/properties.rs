mod common;

use proptest::prelude::*;

use lll_core::checker::{
    check_general, check_symmetric, dependency_degrees, induction_certificate, DependencyMode, GeneralOptions,
    SymmetricVariant,
};
use lll_core::format::{parse_instance, to_text};
use lll_core::instances::{
    gen_ksat, gen_vdw, parse_dimacs, vdw_analytic_degree, CnfFormula, Digraph,
};
use lll_core::measure::{
    enumerated_measure, independent, independent_from_family, joint_measure, measure, support_disjoint_certificate,
    EventSet,
};
use lll_core::rational::{frac, int};
use lll_core::solver::{default_budget, extract_cycle, solve_resample, verify_assignment, RngSpec, Resampler};
use lll_core::{BadEvent, EnumConfig, Instance, Literal, Rational, Space, VariableSpace};

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

fn brute(space: &Space, sets: &[EventSet<'_>]) -> Rational {
    let points = common::all_points(space);
    let hits = points.iter().filter(|p| sets.iter().all(|s| s.contains(p))).count();
    frac(hits as i64, points.len() as i64)
}

fn sets(inst: &Instance, mask: u32) -> Vec<EventSet<'_>> {
    inst.events()
        .iter()
        .enumerate()
        .map(|(i, e)| if mask >> i & 1 == 1 { e.good() } else { e.as_set() })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complement_invariance(seed in any::<u64>()) {
        let inst = common::random_instance(seed, 2, 4096);
        prop_assume!(inst.len() == 2);
        let (a, b) = (&inst.events()[0], &inst.events()[1]);
        let s = inst.space();
        let base = independent(s, a.as_set(), b.as_set(), &cfg()).unwrap();
        prop_assert_eq!(base, independent(s, a.as_set(), b.good(), &cfg()).unwrap());
        prop_assert_eq!(base, independent(s, a.good(), b.good(), &cfg()).unwrap());
    }

    #[test]
    fn family_complement_invariance(seed in any::<u64>()) {
        let inst = common::random_instance(seed, 5, 4096);
        prop_assume!(inst.len() >= 2);
        let s = inst.space();
        let (a, rest) = inst.events().split_first().unwrap();
        let bs: Vec<EventSet> = rest.iter().map(|e| e.as_set()).collect();
        let cs: Vec<EventSet> = rest.iter().map(|e| e.good()).collect();
        let base = independent_from_family(s, a.as_set(), &bs, &cfg()).unwrap();
        prop_assert_eq!(base, independent_from_family(s, a.good(), &bs, &cfg()).unwrap());
        prop_assert_eq!(base, independent_from_family(s, a.good(), &cs, &cfg()).unwrap());
    }

    #[test]
    fn projection_soundness(seed in any::<u64>(), bits in 2u32..=16) {
        let inst = common::random_instance(seed, 4, 1 << bits);
        let s = inst.space();
        for e in inst.events() {
            prop_assert_eq!(measure(s, e, &cfg()).unwrap(), brute(s, &[e.as_set()]));
        }
        let mask = (seed >> 32) as u32;
        let family = sets(&inst, mask);
        prop_assert_eq!(joint_measure(s, &family, &cfg()).unwrap(), brute(s, &family));
    }

    #[test]
    fn structural_certificate_soundness(seed in any::<u64>()) {
        let inst = common::random_instance(seed, 5, 4096);
        let (a, rest) = inst.events().split_first().unwrap();
        let family: Vec<&BadEvent> = rest.iter().filter(|e| !a.shares_support(e)).collect();
        prop_assert!(support_disjoint_certificate(a, &family));
        let fs: Vec<EventSet> = family.iter().map(|e| e.as_set()).collect();
        prop_assert!(independent_from_family(inst.space(), a.as_set(), &fs, &cfg()).unwrap());
    }

    #[test]
    fn symmetric_monotonicity(seed in any::<u64>(), extra in 0u64..8) {
        let inst = common::random_instance(seed, 6, 4096);
        let deps = dependency_degrees(&inst, DependencyMode::Structural, &cfg()).unwrap();
        let d = deps.max_degree() as u64;
        let at_d = check_symmetric(&inst, &deps, Some(d), SymmetricVariant::FourD, &cfg()).unwrap();
        let d2 = d + extra;
        let tighter = inst.events().iter().all(|e| measure(inst.space(), e, &cfg()).unwrap() <= frac(1, 4 * d2 as i64));
        if at_d.applicable() && tighter {
            let at_d2 = check_symmetric(&inst, &deps, Some(d2), SymmetricVariant::FourD, &cfg()).unwrap();
            prop_assert!(at_d2.applicable());
        }
    }

    #[test]
    fn symmetric_certificate_soundness(seed in any::<u64>()) {
        let inst = common::random_instance(seed, 6, 1 << 16);
        let deps = dependency_degrees(&inst, DependencyMode::Structural, &cfg()).unwrap();
        let cert = check_symmetric(&inst, &deps, None, SymmetricVariant::FourD, &cfg()).unwrap();
        if cert.applicable() {
            let goods: Vec<EventSet> = inst.events().iter().map(|e| e.good()).collect();
            let fraction = brute(inst.space(), &goods);
            prop_assert!(fraction > int(0));
            prop_assert!(fraction >= cert.guaranteed_fraction);
            prop_assert!(induction_certificate(&inst, cert.d.unwrap(), &cfg()).unwrap().all_hold());
        }
    }

    #[test]
    fn general_certificate_soundness(seed in any::<u64>(), num in 1i64..20) {
        let inst = common::random_instance(seed, 5, 4096);
        let deps = dependency_degrees(&inst, DependencyMode::Structural, &cfg()).unwrap();
        let j_sets: Vec<Vec<usize>> = (0..inst.len()).map(|k| deps.certified(k)).collect();
        let gammas = vec![frac(num, 20); inst.len()];
        for include_self in [false, true] {
            let cert = check_general(&inst, &j_sets, &gammas, GeneralOptions { include_self }, &cfg()).unwrap();
            if cert.applicable() {
                let goods: Vec<EventSet> = inst.events().iter().map(|e| e.good()).collect();
                prop_assert!(brute(inst.space(), &goods) >= cert.guaranteed_fraction);
            }
        }
    }

    #[test]
    fn null_events_change_nothing(seed in any::<u64>()) {
        let inst = common::random_instance(seed, 5, 4096);
        let s = inst.space().clone();
        let mut events = inst.events().to_vec();
        let all: Vec<usize> = (0..s.num_vars()).collect();
        events.push(BadEvent::patterns("null", all, Vec::new(), &s).unwrap());
        let padded = Instance::new("padded", s, events).unwrap();
        let d0 = dependency_degrees(&inst, DependencyMode::Structural, &cfg()).unwrap();
        let d1 = dependency_degrees(&padded, DependencyMode::Structural, &cfg()).unwrap();
        prop_assert_eq!(&d0.degrees()[..], &d1.degrees()[..inst.len()]);
        let c0 = check_symmetric(&inst, &d0, None, SymmetricVariant::FourD, &cfg()).unwrap();
        let c1 = check_symmetric(&padded, &d1, None, SymmetricVariant::FourD, &cfg()).unwrap();
        prop_assert_eq!(c0.applicable(), c1.applicable());
    }

    #[test]
    fn solver_determinism_and_soundness(seed in any::<u64>(), solver_seed in any::<u64>()) {
        let inst = common::random_instance(seed, 6, 4096);
        let a = solve_resample(&inst, RngSpec::new(solver_seed), 500).unwrap();
        let b = solve_resample(&inst, RngSpec::new(solver_seed), 500).unwrap();
        prop_assert_eq!(a.trace_dump(&inst), b.trace_dump(&inst));
        prop_assert_eq!(&a, &b);
        if a.solved() {
            prop_assert!(verify_assignment(&inst, &a.assignment).unwrap().is_empty());
        }
    }

    #[test]
    fn resample_locality(seed in any::<u64>(), solver_seed in any::<u64>()) {
        let inst = common::random_instance(seed, 6, 4096);
        let mut r = Resampler::new(&inst, RngSpec::new(solver_seed)).unwrap();
        for _ in 0..50 {
            let before = r.values().to_vec();
            let Some(k) = r.step() else { break };
            let support = inst.events()[k].support();
            for (v, (x, y)) in before.iter().zip(r.values()).enumerate() {
                prop_assert!(x == y || support.contains(&v));
            }
        }
    }

    #[test]
    fn instance_text_round_trip(seed in any::<u64>()) {
        let inst = common::random_instance(seed, 6, 4096);
        let text = to_text(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(to_text(&back), text);
    }

    #[test]
    fn instance_parser_is_total(text in "\\PC{0,300}") {
        let _ = parse_instance(&text);
        let _ = parse_instance(&format!("lll-instance 1\n{text}"));
    }

    #[test]
    fn dimacs_round_trip(vars in 6usize..60, clauses in 1usize..20, k in 2usize..6, seed in any::<u64>()) {
        prop_assume!(vars >= k);
        if let Ok(f) = gen_ksat(vars, clauses, k, seed) {
            let text = f.to_dimacs();
            let back = parse_dimacs(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_dimacs(), text);
        }
    }

    #[test]
    fn dimacs_parser_is_total(text in "(p cnf [0-9]{1,2} [0-9]{1,2}\n)?([-0-9 c%p\n]{0,80})") {
        let _ = parse_dimacs(&text);
    }

    #[test]
    fn extracted_cycles_are_valid(n in 3usize..40, degree in 1usize..4, seed in any::<u64>(), k in 1u32..4) {
        prop_assume!(degree < n);
        let g = Digraph::random_regular(n, degree, seed).unwrap();
        let inst = lll_core::instances::gen_digraph_labels(&g, k).unwrap();
        let r = solve_resample(&inst, RngSpec::new(seed), default_budget(inst.len(), None)).unwrap();
        if let Ok(cycle) = extract_cycle(&g, &r.assignment.values, k) {
            prop_assert_eq!(cycle.len() % k as usize, 0);
            for (i, &v) in cycle.iter().enumerate() {
                prop_assert!(g.out(v).contains(&cycle[(i + 1) % cycle.len()]));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn analytic_measures_match_enumeration(size in 1usize..=12, colors in 2u32..=3, lits in prop::collection::vec(any::<bool>(), 1..=12)) {
        let space: Space = VariableSpace::uniform(12, colors).unwrap().into();
        let support: Vec<usize> = (0..size).collect();
        let mono = BadEvent::monochromatic("m", support.clone(), &space).unwrap();
        let missing = BadEvent::missing_color("x", support, &space).unwrap();
        for e in [&mono, &missing] {
            let shortcut = e.shortcut_measure(&space).unwrap();
            prop_assert_eq!(shortcut, enumerated_measure(&space, e, &cfg()).unwrap());
        }
        let bools: Space = VariableSpace::uniform(12, 2).unwrap().into();
        let literals = lits.iter().enumerate().map(|(v, &p)| if p { Literal::positive(v) } else { Literal::negative(v) }).collect();
        let clause = BadEvent::clause("c", literals, &bools).unwrap();
        prop_assert_eq!(clause.shortcut_measure(&bools).unwrap(), enumerated_measure(&bools, &clause, &cfg()).unwrap());
    }

    #[test]
    fn vdw_bounds_dominate_scan(n in 3usize..=60, k in 3usize..=8) {
        prop_assume!(n >= k);
        let inst = gen_vdw(n, k).unwrap();
        let deps = dependency_degrees(&inst, DependencyMode::Structural, &cfg()).unwrap();
        let scanned = deps.max_degree() as u64;
        let analytic = vdw_analytic_degree(n as u64, k as u64);
        prop_assert!(analytic >= num_bigint::BigUint::from(scanned));
        prop_assert!((n * k + 1) as u64 >= scanned);
    }
}

#[test]
fn independence_notions_separate() {
    use lll_core::chain::{find_family_not_pairwise, find_pairwise_not_family};
    assert!(find_pairwise_not_family(8).is_some());
    assert!(find_family_not_pairwise(8).is_some());
}

#[test]
fn certified_instances_solve_for_most_seeds() {
    let mut instances = 0;
    for seed in 0..400u64 {
        let inst = common::random_instance(seed, 6, 1 << 16);
        let deps = dependency_degrees(&inst, DependencyMode::Structural, &cfg()).unwrap();
        let cert = check_symmetric(&inst, &deps, None, SymmetricVariant::FourD, &cfg()).unwrap();
        if !cert.applicable() {
            continue;
        }
        instances += 1;
        let budget = default_budget(inst.len(), cert.d);
        let solved = (0..100u64)
            .filter(|&s| {
                let first = solve_resample(&inst, RngSpec::new(s), budget).unwrap();
                let r = if first.solved() { first } else { solve_resample(&inst, RngSpec::new(s), 2 * budget).unwrap() };
                assert!(r.solved(), "instance {seed} seed {s} failed with doubled budget");
                assert!(verify_assignment(&inst, &r.assignment).unwrap().is_empty());
                r.resample_count <= budget
            })
            .count();
        assert!(solved >= 95, "instance {seed}: {solved}/100");
    }
    assert!(instances >= 20);
}

#[test]
fn ksat_formula_evaluation_agrees_with_events() {
    let f = CnfFormula::new(3, vec![vec![1, -2], vec![2, 3], vec![-1, -3]]).unwrap();
    let inst = lll_core::instances::cnf_to_instance(&f).unwrap();
    for mask in 0u32..8 {
        let values: Vec<u32> = (0..3).map(|b| mask >> b & 1).collect();
        let bits: Vec<bool> = values.iter().map(|&v| v == 1).collect();
        let bad = inst.events().iter().any(|e| e.holds(&values));
        assert_eq!(f.satisfied_by(&bits), !bad);
    }
}
