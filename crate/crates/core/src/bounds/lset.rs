use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ConwayWord;

/// The set of vertical twist regions that can be left untouched by the
/// general certificate, together with the running residues mod 4.
///
/// An even index `j` joins the set when the entries before it that are not
/// themselves members add up to an even number. Indices are considered in
/// increasing order, so earlier decisions feed later ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSet {
    pub members: BTreeSet<usize>,
    /// `residues[j-1]` is the sum of `c_i` over `i < j`, `i` not a member,
    /// reduced into `{-2, -1, 0, 1}`.
    pub residues: Vec<i8>,
}

impl LSet {
    pub fn contains(&self, j: usize) -> bool {
        self.members.contains(&j)
    }

    pub fn residue(&self, j: usize) -> i8 {
        self.residues[j - 1]
    }

    /// Sum of the entries whose index is not a member.
    pub fn outside_sum(&self, w: &ConwayWord) -> u32 {
        (1..=w.len()).filter(|j| !self.contains(*j)).map(|j| w.get(j)).sum()
    }
}

pub fn l_set(w: &ConwayWord) -> LSet {
    let mut members = BTreeSet::new();
    let mut residues = Vec::with_capacity(w.len());
    let mut prefix = 0u64;
    for j in 1..=w.len() {
        let r = (prefix % 4) as i8;
        residues.push(if r >= 2 { r - 4 } else { r });
        if j % 2 == 0 && prefix % 2 == 0 {
            members.insert(j);
        } else {
            prefix += u64::from(w.get(j));
        }
    }
    LSet { members, residues }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(v: &[u32]) -> ConwayWord {
        ConwayWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_entry_has_no_members() {
        assert!(l_set(&word(&[5])).members.is_empty());
    }

    #[test]
    fn membership_examples() {
        let l = l_set(&word(&[2, 3, 4, 2, 6]));
        assert_eq!(l.members, BTreeSet::from([2, 4]));
        assert_eq!(l.outside_sum(&word(&[2, 3, 4, 2, 6])), 12);
        assert_eq!(l.residues, vec![0, -2, -2, -2, -2]);
        assert!(l_set(&word(&[3, 2, 3])).members.is_empty());
    }

    #[test]
    fn members_are_skipped_in_later_sums() {
        // j = 2 joins (c1 = 2), so j = 4 sees c1 + c3 = 5 and stays out
        let l = l_set(&word(&[2, 7, 3, 1]));
        assert_eq!(l.members, BTreeSet::from([2]));
        assert_eq!(l.residue(4), 1);
    }
}
