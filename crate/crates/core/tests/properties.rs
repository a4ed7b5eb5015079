mod common;

use proptest::prelude::*;

use approval_dhondt::axioms::{check_ejr, check_jr, check_lower_quota, replay, AxiomCaps, Status};
use approval_dhondt::format::{emit_election, parse_election};
use approval_dhondt::rational::{int, ratio};
use approval_dhondt::rules::{av, monroe_assignment, odh, pav, rav, sav, Rule, RuleConfig};
use approval_dhondt::support::{
    improve_distribution, maxmin_support_with, tight_kernel, validate_distribution, SolverPath,
    SupportDistribution,
};
use approval_dhondt::{CandidateId, CandidateSet, Election};

use common::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("c{i}")).collect()
}

/// Elections with `1..=max_candidates` candidates, possibly blank ballots
/// and abstaining voters.
fn elections(max_candidates: usize, max_types: usize, max_count: u64) -> impl Strategy<Value = Election> {
    (1..=max_candidates).prop_flat_map(move |n| {
        (
            1..=n,
            prop::collection::vec((0u64..1 << n, 1..=max_count), 1..=max_types),
            0u64..3,
        )
            .prop_map(move |(seats, ballots, abstain)| {
                let cast: u64 = ballots.iter().map(|(_, c)| c).sum();
                Election::new(
                    labels(n),
                    seats,
                    ballots.into_iter().map(|(m, c)| (CandidateSet::from_bits(m), c)),
                    Some(cast + abstain),
                )
                .expect("valid by construction")
            })
    })
}

fn with_target(e: Election) -> impl Strategy<Value = (Election, CandidateSet)> {
    let n = e.num_candidates();
    (Just(e), 1u64..1 << n).prop_map(|(e, m)| (e, CandidateSet::from_bits(m)))
}

/// Each ballot's weight split evenly among its approved target members.
fn even_split(e: &Election, target: CandidateSet) -> SupportDistribution {
    let mut f = SupportDistribution::new(target);
    for &(y, n) in e.profile() {
        let hit = y.intersection(target);
        for c in hit.iter() {
            f.set(y, c, ratio(n, hit.len() as u64));
        }
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn supporters_grow_with_the_set((e, k) in elections(6, 6, 30).prop_flat_map(with_target)) {
        let n = e.num_candidates();
        for c in 0..n {
            let bigger = k.with(CandidateId(c));
            prop_assert!(e.supporters(k).unwrap() <= e.supporters(bigger).unwrap());
        }
    }

    #[test]
    fn solvers_agree_with_hall_ratio((e, target) in elections(6, 7, 40).prop_flat_map(with_target)) {
        let oracle = hall_ratio(&e, target);
        for path in [SolverPath::Flow, SolverPath::Simplex] {
            let r = maxmin_support_with(&e, target, path).unwrap();
            prop_assert_eq!(&r.value, &oracle, "{:?}", path);
            prop_assert!(validate_distribution(&e, &r.witness).is_valid());
            prop_assert_eq!(r.witness.support_vector().min().cloned(), Some(oracle.clone()));
            let k = tight_kernel(&e, &r).unwrap();
            prop_assert!(k.is_subset(target));
            prop_assert_eq!(ratio(e.supporters(k).unwrap(), k.len() as u64), oracle.clone());
        }
    }

    #[test]
    fn adding_a_candidate_never_raises_the_optimum(
        (e, target) in elections(6, 6, 40).prop_flat_map(with_target),
        extra in 0usize..6,
    ) {
        let c = CandidateId(extra % e.num_candidates());
        let before = maxmin_support_with(&e, target, SolverPath::Flow).unwrap().value;
        let after = maxmin_support_with(&e, target.with(c), SolverPath::Flow).unwrap().value;
        prop_assert!(after <= before);
    }

    #[test]
    fn improvement_steps_rise_strictly_and_stay_bounded(
        (e, target) in elections(5, 6, 20).prop_flat_map(with_target),
    ) {
        let optimum = hall_ratio(&e, target);
        let mut f = even_split(&e, target);
        let mut current = f.support_vector().min().cloned().unwrap();
        for _ in 0..12 {
            let Some(step) = improve_distribution(&e, &f) else { break };
            prop_assert!(validate_distribution(&e, &step.distribution).is_valid());
            let next = step.distribution.support_vector().min().cloned().unwrap();
            prop_assert!(next > current, "{} !> {}", next, current);
            prop_assert!(next <= optimum);
            current = next;
            f = step.distribution;
        }
    }

    #[test]
    fn text_format_round_trips(e in elections(8, 8, 1000)) {
        prop_assert_eq!(parse_election(&emit_election(&e)).unwrap(), e);
    }

    #[test]
    fn sequential_rule_builds_prefixes(e in elections(6, 6, 40)) {
        let cfg = RuleConfig::default();
        let r = odh(&e, &cfg).unwrap();
        let values: Vec<_> = r.trace.iter().map(|t| t.value_of(t.chosen).cloned().unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        let top = e.candidates().map(|c| e.approval_score(c)).max().unwrap();
        prop_assert_eq!(e.approval_score(r.trace[0].chosen), top);
        prop_assert_eq!(e.approval_score(rav(&e, &cfg).trace[0].chosen), top);
        if e.seats() < e.num_candidates() {
            let more = odh(&e.with_seats(e.seats() + 1).unwrap(), &cfg).unwrap();
            prop_assert_eq!(&more.trace[..r.trace.len()], &r.trace[..]);
            prop_assert!(r.winners().unwrap().is_subset(more.winners().unwrap()));
        }
    }

    #[test]
    fn single_seat_proportional_approval_is_approval(e in elections(6, 6, 40)) {
        let e = e.with_seats(1).unwrap();
        let cfg = RuleConfig::enumerated();
        prop_assert_eq!(pav(&e, &cfg).unwrap().outcomes(&e), av(&e, &cfg).outcomes(&e));
    }

    #[test]
    fn satisfaction_equals_approval_on_singletons(
        seats in 1usize..4,
        counts in prop::collection::vec(1u64..30, 4),
    ) {
        let ballots = counts.iter().enumerate().map(|(i, &n)| (CandidateSet::singleton(CandidateId(i)), n));
        let e = Election::new(labels(4), seats, ballots, None).unwrap();
        let cfg = RuleConfig::enumerated();
        prop_assert_eq!(sav(&e, &cfg).outcomes(&e), av(&e, &cfg).outcomes(&e));
    }

    #[test]
    fn jr_matches_family_brute_force(e in elections(5, 6, 10), pick in any::<u64>()) {
        let committees = k_subsets(e.num_candidates(), e.seats());
        let w = committees[(pick % committees.len() as u64) as usize];
        let types: Vec<(CandidateSet, u64)> = e.profile().to_vec();
        let mut expected = false;
        for m in 1u64..1 << types.len() {
            let family: Vec<_> = types.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, t)| *t).collect();
            let common = family.iter().fold(e.roster(), |acc, (y, _)| acc.intersection(*y));
            let mass: u64 = family.iter().map(|(_, n)| n).sum();
            let unrepresented = family.iter().all(|(y, _)| !y.intersects(w));
            if !common.is_empty() && unrepresented && int(mass) >= ratio(e.total_voters(), e.seats() as u64) {
                expected = true;
            }
        }
        let v = check_jr(&e, w).unwrap();
        prop_assert_eq!(v.status == Status::Violated, expected);
        if expected {
            prop_assert!(replay(&e, &v, None));
        }
    }

    #[test]
    fn axiom_strengths_are_ordered(e in elections(5, 6, 20), pick in any::<u64>()) {
        let committees = k_subsets(e.num_candidates(), e.seats());
        let w = committees[(pick % committees.len() as u64) as usize];
        let caps = AxiomCaps::default();
        let jr = check_jr(&e, w).unwrap().status;
        let lq = check_lower_quota(&e, w, &caps).unwrap();
        let ejr = check_ejr(&e, w, &caps).unwrap();
        if jr == Status::Violated {
            prop_assert_eq!(&lq.status, &Status::Violated);
        }
        if lq.status == Status::Violated {
            prop_assert_eq!(&ejr.status, &Status::Violated);
            prop_assert!(replay(&e, &lq, None));
        }
        if ejr.status == Status::Violated {
            prop_assert!(replay(&e, &ejr, None));
        }
    }

    #[test]
    fn monroe_matches_brute_force(
        n in 1usize..5,
        ballots in prop::collection::vec((0u64..16, 1u64..3), 1..5),
        seats in 1usize..4,
        pick in any::<u64>(),
    ) {
        let cast: u64 = ballots.iter().map(|(_, c)| c).sum();
        prop_assume!(cast <= 8);
        let seats = seats.min(n);
        let mask = (1u64 << n) - 1;
        let e = Election::new(
            labels(n),
            seats,
            ballots.iter().map(|&(m, c)| (CandidateSet::from_bits(m & mask), c)),
            None,
        ).unwrap();
        let committees = k_subsets(n, seats);
        let w = committees[(pick % committees.len() as u64) as usize];
        let a = monroe_assignment(&e, w).unwrap();
        prop_assert_eq!(Some(a.misrepresentation), monroe_brute_force(&e, w));
        for &(y, count) in e.profile() {
            let given: u64 = w.iter().map(|c| a.shares.get(&(y, c)).copied().unwrap_or(0)).sum();
            prop_assert_eq!(given, count);
        }
        let people = e.ballots_cast();
        let (lo, hi) = (people / seats as u64, people.div_ceil(seats as u64));
        for c in w.iter() {
            let load: u64 = e.profile().iter().map(|&(y, _)| a.shares.get(&(y, c)).copied().unwrap_or(0)).sum();
            prop_assert!(lo <= load && load <= hi);
        }
    }

    #[test]
    fn rule_level_violations_replay(e in elections(5, 5, 20), rule_pick in 0usize..11) {
        use approval_dhondt::axioms::{check_rule, Axiom};
        let rule = Rule::ALL[rule_pick];
        let cfg = RuleConfig::enumerated();
        for axiom in [Axiom::Jr, Axiom::HouseMonotonicity, Axiom::PopulationMonotonicity] {
            if let Ok(v) = check_rule(rule, axiom, &e, &cfg, &AxiomCaps::default()) {
                if v.status == Status::Violated {
                    prop_assert!(replay(&e, &v, Some((rule, &cfg))), "{} {}", rule, axiom);
                }
            }
        }
    }
}
