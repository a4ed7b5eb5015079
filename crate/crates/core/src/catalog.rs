//! Reference elections used throughout the documentation, tests and CLI
//! demos: the worked examples and counterexamples for the implemented rules.

use crate::model::{CandidateId, CandidateSet, Election};
use crate::rational::int;
use crate::support::SupportDistribution;

fn build(labels: &[&str], seats: usize, ballots: &[(u64, &[&str])], voters: Option<u64>) -> Election {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let mut lines = Vec::new();
    for (count, names) in ballots {
        let set: CandidateSet = names
            .iter()
            .map(|n| CandidateId(labels.iter().position(|l| l == n).expect("known label")))
            .collect();
        lines.push((set, *count));
    }
    Election::new(labels, seats, lines, voters).expect("catalog election is valid")
}

/// Three closed lists A, B, C of five candidates each; 5100/3150/1750 votes,
/// five seats.
pub fn table1() -> Election {
    let labels: Vec<String> = ["a", "b", "c"]
        .iter()
        .flat_map(|p| (1..=5).map(move |i| format!("{p}{i}")))
        .collect();
    let block = |k: usize| (0..5).map(|i| CandidateId(5 * k + i)).collect::<CandidateSet>();
    Election::new(
        labels,
        5,
        [(block(0), 5100), (block(1), 3150), (block(2), 1750)],
        None,
    )
    .expect("catalog election is valid")
}

/// Seven candidates, three seats, 45,000 voters of which 43,000 cast ballots.
pub fn sigma_a() -> Election {
    build(
        &["a", "b", "c", "d", "e", "f", "g"],
        3,
        &[
            (10000, &["a", "b"]),
            (6000, &["a", "c"]),
            (4000, &["b"]),
            (5500, &["c"]),
            (9500, &["d"]),
            (5000, &["e", "f", "g"]),
            (3000, &["e"]),
        ],
        Some(45000),
    )
}

/// `sigma_a` after one `{a,b}` voter also approves `d`.
pub fn sigma_a1() -> Election {
    build(
        &["a", "b", "c", "d", "e", "f", "g"],
        3,
        &[
            (9999, &["a", "b"]),
            (1, &["a", "b", "d"]),
            (6000, &["a", "c"]),
            (4000, &["b"]),
            (5500, &["c"]),
            (9500, &["d"]),
            (5000, &["e", "f", "g"]),
            (3000, &["e"]),
        ],
        Some(45000),
    )
}

/// The kernel illustration: target `{a,b,c,d,f}` has max-min support 8,700.
pub fn sigma_b() -> Election {
    build(
        &["a", "b", "c", "d", "e", "f", "g"],
        3,
        &[
            (10000, &["a", "b"]),
            (6000, &["a", "c"]),
            (4000, &["b"]),
            (5500, &["c"]),
            (600, &["b", "d", "e"]),
            (9500, &["d"]),
            (9000, &["d", "f", "g"]),
        ],
        Some(44600),
    )
}

/// Target set used with [`sigma_b`].
pub fn sigma_b_target(e: &Election) -> CandidateSet {
    e.set_of(&["a", "b", "c", "d", "f"]).expect("labels exist")
}

fn sigma_b_distribution(e: &Election, values: [u64; 11]) -> SupportDistribution {
    let s = |v: &[&str]| e.set_of(v).expect("labels exist");
    let id = |l: &str| e.id_of(l).expect("label exists");
    let cells: [(&[&str], &str); 11] = [
        (&["a", "b"], "a"),
        (&["a", "b"], "b"),
        (&["a", "c"], "a"),
        (&["a", "c"], "c"),
        (&["b"], "b"),
        (&["c"], "c"),
        (&["b", "d", "e"], "b"),
        (&["b", "d", "e"], "d"),
        (&["d"], "d"),
        (&["d", "f", "g"], "d"),
        (&["d", "f", "g"], "f"),
    ];
    let mut f = SupportDistribution::new(sigma_b_target(e));
    for ((ballot, cand), v) in cells.iter().zip(values) {
        f.set(s(ballot), id(cand), int(v));
    }
    f
}

/// An optimal distribution for [`sigma_b`] (min support 8,700).
pub fn f_b1(e: &Election) -> SupportDistribution {
    sigma_b_distribution(
        e,
        [5900, 4100, 2800, 3200, 4000, 5500, 600, 0, 9500, 300, 8700],
    )
}

/// A non-optimal distribution for [`sigma_b`] (min support 8,500).
pub fn f_b2(e: &Election) -> SupportDistribution {
    sigma_b_distribution(
        e,
        [5500, 4500, 3000, 3000, 4000, 5500, 0, 600, 9500, 500, 8500],
    )
}

/// The improvement of [`f_b2`] obtained by one support-transfer round.
pub fn f_b3(e: &Election) -> SupportDistribution {
    sigma_b_distribution(
        e,
        [5800, 4200, 2850, 3150, 4000, 5500, 450, 150, 9500, 375, 8625],
    )
}

/// Six voters, four seats: a three-voter `{c4,c5}` block owed both seats.
pub fn sigma_c() -> Election {
    build(
        &["c1", "c2", "c3", "c4", "c5"],
        4,
        &[(1, &["c1"]), (1, &["c2"]), (1, &["c3"]), (3, &["c4", "c5"])],
        None,
    )
}

fn three_candidate(seats: usize, counts: [u64; 5]) -> Election {
    let shapes: [&[&str]; 5] = [&["a", "b"], &["b", "c"], &["a"], &["b"], &["c"]];
    let ballots: Vec<(u64, &[&str])> = counts.into_iter().zip(shapes).collect();
    build(&["a", "b", "c"], seats, &ballots, None)
}

pub fn sigma_d1() -> Election {
    three_candidate(1, [3, 3, 3, 1, 3])
}

pub fn sigma_d2() -> Election {
    three_candidate(2, [3, 3, 3, 1, 3])
}

pub fn sigma_e1() -> Election {
    three_candidate(1, [3, 3, 3, 2, 3])
}

pub fn sigma_e2() -> Election {
    three_candidate(2, [3, 3, 3, 2, 3])
}

pub fn sigma_f() -> Election {
    three_candidate(2, [4, 0, 6, 2, 5])
}

/// Ten voters, one seat: Chamberlin–Courant house-monotonicity failure.
pub fn sigma_g1() -> Election {
    build(
        &["a", "b", "c"],
        1,
        &[(3, &["a", "b"]), (3, &["a", "c"]), (2, &["b"]), (2, &["c"])],
        None,
    )
}

/// [`sigma_g1`] with two seats.
pub fn sigma_g2() -> Election {
    sigma_g1().with_seats(2).expect("two seats fit")
}

/// Ten voters, seven seats: Monroe lower-quota failure.
pub fn sigma_h() -> Election {
    build(
        &["c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"],
        7,
        &[
            (6, &["c1", "c2", "c3", "c4"]),
            (1, &["c5"]),
            (1, &["c6"]),
            (1, &["c7"]),
            (1, &["c8"]),
        ],
        None,
    )
}

/// Looks up a catalog election by name (`sigma_a`, `table1`, ...).
pub fn by_name(name: &str) -> Option<Election> {
    Some(match name {
        "table1" => table1(),
        "sigma_a" => sigma_a(),
        "sigma_a1" => sigma_a1(),
        "sigma_b" => sigma_b(),
        "sigma_c" => sigma_c(),
        "sigma_d1" => sigma_d1(),
        "sigma_d2" => sigma_d2(),
        "sigma_e1" => sigma_e1(),
        "sigma_e2" => sigma_e2(),
        "sigma_f" => sigma_f(),
        "sigma_g1" => sigma_g1(),
        "sigma_g2" => sigma_g2(),
        "sigma_h" => sigma_h(),
        _ => return None,
    })
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "table1", "sigma_a", "sigma_a1", "sigma_b", "sigma_c", "sigma_d1", "sigma_d2", "sigma_e1",
    "sigma_e2", "sigma_f", "sigma_g1", "sigma_g2", "sigma_h",
];
