//! Integer signatures (highest weights of `U(n)` and labels of Jack
//! polynomials), partitions and the arm/leg statistics of Young-diagram boxes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of integers, one entry per variable.
///
/// Trailing zeros are kept: the length is the number of variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Signature(parts))
    }

    pub fn zeros(n_vars: usize) -> Self {
        Signature(vec![0; n_vars])
    }

    /// Builds `(head, 0, ..., 0, tail)` with `n_vars` parts in total, the
    /// usual shorthand for labels such as `(1, 0^{n-2}, -1)`.
    pub fn from_head_tail(head: &[i64], tail: &[i64], n_vars: usize) -> Result<Self> {
        let used = head.len() + tail.len();
        if used > n_vars {
            return Err(Error::LengthMismatch { expected: n_vars, got: used });
        }
        let mut parts = head.to_vec();
        parts.resize(n_vars - tail.len(), 0);
        parts.extend_from_slice(tail);
        Signature::new(parts)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_partition(&self) -> bool {
        self.0.iter().all(|&p| p >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// Label of the complex-conjugate representation: `(-l_n, ..., -l_1)`.
    pub fn dual(&self) -> Signature {
        Signature(self.0.iter().rev().map(|p| -p).collect())
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<i64>> for Signature {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Signature::new(parts)
    }
}

impl From<Signature> for Vec<i64> {
    fn from(s: Signature) -> Self {
        s.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A partition, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::NegativePart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Partition(
            parts.into_iter().filter(|&p| p > 0).map(|p| p as usize).collect(),
        ))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero rows.
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..width)
                .map(|j| self.0.iter().filter(|&&r| r > j).count())
                .collect(),
        )
    }

    /// The partition padded with zeros to `n_vars` parts.
    pub fn to_signature(&self, n_vars: usize) -> Result<Signature> {
        if self.rows() > n_vars {
            return Err(Error::TooManyRows { rows: self.rows(), n_vars });
        }
        let mut parts: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        parts.resize(n_vars, 0);
        Signature::new(parts)
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.0.into_iter().map(|x| x as i64).collect()
    }
}

/// Arm and leg statistics of a box `s`: cells east (`arm`), south (`leg`),
/// west (`co_arm`) and north (`co_leg`) of `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxStats {
    pub arm: usize,
    pub leg: usize,
    pub co_arm: usize,
    pub co_leg: usize,
}

/// A cell of a Young diagram, 0-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    pub stats: BoxStats,
}

impl Cell {
    /// `(row, col)` in the 1-indexed diagram convention used in reports.
    pub fn position(&self) -> (usize, usize) {
        (self.row + 1, self.col + 1)
    }
}

/// All cells of the diagram of `lambda`, row by row.
pub fn boxes(lambda: &Partition) -> Vec<Cell> {
    let conj = lambda.conjugate();
    let mut cells = Vec::with_capacity(lambda.size());
    for (row, &len) in lambda.parts().iter().enumerate() {
        for col in 0..len {
            cells.push(Cell {
                row,
                col,
                stats: BoxStats {
                    arm: len - col - 1,
                    leg: conj.parts()[col] - row - 1,
                    co_arm: col,
                    co_leg: row,
                },
            });
        }
    }
    cells
}

/// Writes a signature with possibly negative parts as `lambda + (k)^n` times
/// `(x_1 ... x_n)^power`, where `k = max(0, -lambda_n)` and `power = -k`.
pub fn shift_to_partition(lambda: &Signature, n_vars: usize) -> Result<(Partition, i64)> {
    if lambda.len() != n_vars {
        return Err(Error::LengthMismatch { expected: n_vars, got: lambda.len() });
    }
    let k = lambda.parts().last().map_or(0, |&last| (-last).max(0));
    let shifted = lambda.parts().iter().map(|p| p + k).collect();
    Ok((Partition::new(shifted)?, -k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[i64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn empty_partition_has_no_boxes() {
        assert!(boxes(&Partition::empty()).is_empty());
    }

    #[test]
    fn single_box() {
        let cells = boxes(&part(&[1]));
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].stats, BoxStats { arm: 0, leg: 0, co_arm: 0, co_leg: 0 });
    }

    #[test]
    fn box_statistics_example_diagram() {
        // row 2, column 2 of (5,5,2,2)
        let cells = boxes(&part(&[5, 5, 2, 2]));
        let s = cells.iter().find(|c| c.position() == (2, 2)).unwrap();
        assert_eq!(s.stats.co_leg, 1);
        assert_eq!(s.stats.leg, 2);
        assert_eq!(s.stats.co_arm, 1);
        assert_eq!(s.stats.arm, 3);
    }

    #[test]
    fn shift_examples() {
        let n = 5;
        let sig = Signature::from_head_tail(&[1], &[-1], n).unwrap();
        let (p, power) = shift_to_partition(&sig, n).unwrap();
        assert_eq!(p, part(&[2, 1, 1, 1, 0]));
        assert_eq!(power, -1);

        let (p, power) = shift_to_partition(&Signature::new(vec![2, 1]).unwrap(), 2).unwrap();
        assert_eq!((p, power), (part(&[2, 1]), 0));

        let (p, power) = shift_to_partition(&Signature::new(vec![-1, -1]).unwrap(), 2).unwrap();
        assert_eq!((p, power), (Partition::empty(), -1));
    }

    #[test]
    fn shift_rejects_length_mismatch() {
        let sig = Signature::new(vec![1, 0]).unwrap();
        assert!(matches!(shift_to_partition(&sig, 3), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn invalid_inputs() {
        assert!(Signature::new(vec![0, 1]).is_err());
        assert!(Partition::new(vec![2, -1]).is_err());
        assert!(part(&[3, 1]).to_signature(1).is_err());
    }

    #[test]
    fn signature_json_is_an_array() {
        let sig = Signature::new(vec![1, 0, -1]).unwrap();
        assert_eq!(serde_json::to_string(&sig).unwrap(), "[1,0,-1]");
        let back: Signature = serde_json::from_str("[1,0,-1]").unwrap();
        assert_eq!(back, sig);
        assert!(serde_json::from_str::<Signature>("[0,1]").is_err());
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0i64..7, 0..7).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn arm_leg_identities(lambda in arb_partition()) {
            let conj = lambda.conjugate();
            for c in boxes(&lambda) {
                prop_assert_eq!(c.stats.arm + c.stats.co_arm + 1, lambda.parts()[c.row]);
                prop_assert_eq!(c.stats.leg + c.stats.co_leg + 1, conj.parts()[c.col]);
            }
        }

        #[test]
        fn transposition_swaps_arms_and_legs(lambda in arb_partition()) {
            let conj_cells = boxes(&lambda.conjugate());
            for c in boxes(&lambda) {
                let t = conj_cells.iter().find(|d| d.row == c.col && d.col == c.row).unwrap();
                prop_assert_eq!((t.stats.arm, t.stats.co_arm), (c.stats.leg, c.stats.co_leg));
                prop_assert_eq!((t.stats.leg, t.stats.co_leg), (c.stats.arm, c.stats.co_arm));
            }
        }

        #[test]
        fn shift_is_identity_iff_last_part_nonnegative(
            mut v in prop::collection::vec(-4i64..5, 1..6)
        ) {
            v.sort_unstable_by(|a, b| b.cmp(a));
            let n = v.len();
            let sig = Signature::new(v.clone()).unwrap();
            let (p, power) = shift_to_partition(&sig, n).unwrap();
            prop_assert_eq!(power == 0, v[n - 1] >= 0);
            let back: Vec<i64> = p.to_signature(n).unwrap().parts().iter().map(|x| x + power).collect();
            prop_assert_eq!(back, v);
        }
    }
}
