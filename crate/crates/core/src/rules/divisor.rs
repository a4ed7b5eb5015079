//! Divisor-method apportionment for closed-list elections.

use crate::model::{CandidateSet, ClosedListElection};
use crate::rational::{int, Rational};

/// Divisors `d(0) < d(1) < ...` applied to a list holding `i` seats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorSequence {
    /// `1, 2, 3, ...`
    DHondt,
    /// `1, 3, 5, ...`
    SainteLague,
    /// Explicit strictly increasing positive values; must cover every seat.
    Explicit(Vec<Rational>),
}

impl DivisorSequence {
    pub fn explicit(values: Vec<Rational>) -> Option<Self> {
        let positive = values.first().is_some_and(|v| *v > int(0));
        let increasing = values.windows(2).all(|w| w[0] < w[1]);
        (positive && increasing).then_some(DivisorSequence::Explicit(values))
    }

    pub fn divisor(&self, seats_held: usize) -> Rational {
        match self {
            DivisorSequence::DHondt => int(seats_held as u64 + 1),
            DivisorSequence::SainteLague => int(2 * seats_held as u64 + 1),
            DivisorSequence::Explicit(v) => v
                .get(seats_held)
                .cloned()
                .expect("explicit divisor sequence shorter than the seat count"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apportionment {
    pub seats: Vec<usize>,
    /// The top-ranked candidates of each list, up to its seat count.
    pub elected: CandidateSet,
    /// `quotients[i][j]` = votes of list `j` divided by `d(i)`, for `i < S`.
    pub quotients: Vec<Vec<Rational>>,
    /// `(row, list)` cells that won a seat, in award order.
    pub awarded: Vec<(usize, usize)>,
}

/// Awards `S` seats one at a time to the list with the highest quotient;
/// ties go to the lowest list index.
pub fn divisor_apportionment(cle: &ClosedListElection, d: &DivisorSequence) -> Apportionment {
    let lists = cle.lists().len();
    let votes = cle.votes();
    let s = cle.seats();
    let quotients: Vec<Vec<Rational>> = (0..s)
        .map(|i| {
            let div = d.divisor(i);
            votes.iter().map(|&v| int(v) / &div).collect()
        })
        .collect();
    let mut seats = vec![0usize; lists];
    let mut awarded = Vec::with_capacity(s);
    for _ in 0..s {
        let mut best: Option<usize> = None;
        for j in 0..lists {
            if seats[j] >= s {
                continue;
            }
            let q = &quotients[seats[j]][j];
            if best.is_none_or(|b| *q > quotients[seats[b]][b]) {
                best = Some(j);
            }
        }
        let j = best.expect("some list has room");
        awarded.push((seats[j], j));
        seats[j] += 1;
    }
    let elected = cle
        .lists()
        .iter()
        .zip(&seats)
        .flat_map(|(list, &k)| list.iter().take(k).copied())
        .collect();
    Apportionment {
        seats,
        elected,
        quotients,
        awarded,
    }
}
