//! Subset transporters and string isomorphism under a permutation group.
//!
//! `subset_transporter` computes {pi in P : A^pi = B} by dynamic programming
//! over prefixes of A and all same-size subsets of B, with the memo table
//! keyed by bitmask. The cost is exponential in |A| by design; callers keep
//! |A| at most log2 of the group they care about, and a hard cap turns
//! runaway instances into explicit resource errors.

use crate::error::{Error, Result};
use crate::perm::{union_of_cosets, Coset, PermGroup};
use std::collections::HashMap;

/// Hard cap on |A| for the subset DP (table has 2^|A| entries).
pub const SUBSET_CAP: usize = 22;

/// A string over the alphabet {1, ..., alphabet} on the points of a domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupString {
    pub letters: Vec<u32>,
    pub alphabet: u32,
}

impl GroupString {
    pub fn new(letters: Vec<u32>, alphabet: u32) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::Precondition("alphabet must be nonempty".into()));
        }
        for &l in &letters {
            if l == 0 || l > alphabet {
                return Err(Error::Precondition(format!("letter {l} outside 1..={alphabet}")));
            }
        }
        Ok(GroupString { letters, alphabet })
    }

    pub fn domain(&self) -> usize {
        self.letters.len()
    }

    /// Points carrying a given letter.
    pub fn fiber(&self, letter: u32) -> Vec<usize> {
        (0..self.letters.len()).filter(|&x| self.letters[x] == letter).collect()
    }
}

/// {pi in P : A^pi = B}, or None when empty. Errors if |A| exceeds the cap.
pub fn subset_transporter(
    p: &PermGroup,
    a: &[usize],
    b: &[usize],
) -> Result<Option<Coset>> {
    let start = Coset::from_group(p.clone());
    coset_subset_transporter(&start, a, b)
}

/// Same, but restricted to a coset Q*sigma: {pi in Q*sigma : A^pi = B}.
pub fn coset_subset_transporter(
    coset: &Coset,
    a: &[usize],
    b: &[usize],
) -> Result<Option<Coset>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    if a.len() > SUBSET_CAP {
        return Err(Error::resource("subset transporter", 1u128 << SUBSET_CAP));
    }
    let degree = coset.group.degree();
    for &x in a.iter().chain(b.iter()) {
        if x >= degree {
            return Err(Error::IndexOutOfRange { index: x, order: degree });
        }
    }
    // pull back along the representative: {pi in Q sigma : A^pi = B}
    //   = Q_{A -> B^{sigma^{-1}}} * sigma
    let sigma_inv = coset.rep.inverse();
    let b_pulled: Vec<usize> = b.iter().map(|&x| sigma_inv.apply(x)).collect();
    Ok(group_subset_transporter(&coset.group, a, &b_pulled)?
        .map(|c| Coset { group: c.group, rep: c.rep.then(&coset.rep) }))
}

fn group_subset_transporter(
    p: &PermGroup,
    a: &[usize],
    b: &[usize],
) -> Result<Option<Coset>> {
    let k = a.len();
    if k == 0 {
        return Ok(Some(Coset::from_group(p.clone())));
    }
    // dedupe sanity: transporters are between sets
    debug_assert!({
        let mut aa = a.to_vec();
        aa.sort_unstable();
        aa.dedup();
        aa.len() == k
    });
    // memo[mask] = transporter of {a_1..a_i} to the subset of b given by mask,
    // where i = popcount(mask)
    let mut memo: HashMap<u32, Option<Coset>> = HashMap::new();
    // layer 1
    for (j, &bj) in b.iter().enumerate() {
        memo.insert(1 << j, p.point_transporter(a[0], bj));
    }
    for i in 2..=k {
        // enumerate masks of popcount i in increasing numeric order
        let masks = masks_with_popcount(k, i);
        for mask in masks {
            let mut pieces: Vec<Coset> = Vec::new();
            for j in 0..k {
                if mask >> j & 1 == 0 {
                    continue;
                }
                let sub = mask & !(1 << j);
                if let Some(Some(prev)) = memo.get(&sub) {
                    // transport a_{i} (0-based a[i-1]) to b[j] inside prev
                    if let Some(c) = coset_point_transporter(prev, a[i - 1], b[j]) {
                        pieces.push(c);
                    }
                }
            }
            memo.insert(mask, union_of_cosets(&pieces));
        }
    }
    let full = (1u32 << k) - 1;
    Ok(memo.remove(&full).flatten())
}

/// Point transporter restricted to a coset.
fn coset_point_transporter(coset: &Coset, x: usize, y: usize) -> Option<Coset> {
    let y_pulled = coset.rep.inverse().apply(y);
    coset.group.point_transporter(x, y_pulled).map(|c| Coset {
        group: c.group,
        rep: c.rep.then(&coset.rep),
    })
}

fn masks_with_popcount(k: usize, i: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize == i {
            out.push(mask);
        }
    }
    out
}

/// Iso_P(f1, f2) = {pi in P : f1^pi = f2}, with f^pi(x) = f(x^{pi^{-1}}).
///
/// The last letter is the background letter: the bound on the DP is the
/// total number of points carrying letters 1..l-1, which must stay within
/// the subset cap. Callers relabel so the most frequent letter is last.
pub fn string_isomorphisms(
    p: &PermGroup,
    f1: &GroupString,
    f2: &GroupString,
) -> Result<Option<Coset>> {
    coset_string_isomorphisms(&Coset::from_group(p.clone()), f1, f2)
}

/// Iso restricted to a coset of P.
pub fn coset_string_isomorphisms(
    start: &Coset,
    f1: &GroupString,
    f2: &GroupString,
) -> Result<Option<Coset>> {
    if f1.alphabet != f2.alphabet {
        return Err(Error::Precondition("strings use different alphabets".into()));
    }
    if f1.domain() != start.group.degree() || f2.domain() != start.group.degree() {
        return Err(Error::DegreeMismatch(f1.domain(), start.group.degree()));
    }
    let l = f1.alphabet;
    let mut cur = start.clone();
    for letter in 1..l {
        let a = f1.fiber(letter);
        let b = f2.fiber(letter);
        match coset_subset_transporter(&cur, &a, &b)? {
            Some(c) => cur = c,
            None => return Ok(None),
        }
    }
    // letters 1..l-1 pinned; the background letter follows automatically
    debug_assert!(f1.fiber(l).len() == f2.fiber(l).len() || l == 1);
    if f1.fiber(l).len() != f2.fiber(l).len() {
        return Ok(None);
    }
    Ok(Some(cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize, pts: &[usize]) -> Perm {
        let mut img: Vec<usize> = (0..n).collect();
        for w in 0..pts.len() {
            img[pts[w]] = pts[(w + 1) % pts.len()];
        }
        Perm::from_images(img).unwrap()
    }

    fn brute_elements(g: &PermGroup) -> Vec<Perm> {
        g.elements_capped(100_000).unwrap()
    }

    #[test]
    fn singleton_transporter_in_sym3() {
        let p = PermGroup::symmetric(3);
        let c = subset_transporter(&p, &[0], &[1]).unwrap().unwrap();
        assert_eq!(c.size(), 2);
        for e in c.elements_capped(10).unwrap() {
            assert_eq!(e.apply(0), 1);
        }
    }

    #[test]
    fn empty_sets_give_whole_group_with_identity_rep() {
        let p = PermGroup::symmetric(4);
        let c = subset_transporter(&p, &[], &[]).unwrap().unwrap();
        assert_eq!(c.size(), 24);
        assert!(c.rep.is_identity());
    }

    #[test]
    fn four_cycle_cannot_map_alternate_pair_to_adjacent() {
        let p = PermGroup::new(4, vec![cycle(4, &[0, 1, 2, 3])]).unwrap();
        assert!(subset_transporter(&p, &[0, 2], &[0, 1]).unwrap().is_none());
        // but {0,2} -> {1,3} works
        let c = subset_transporter(&p, &[0, 2], &[1, 3]).unwrap().unwrap();
        assert_eq!(c.size(), 2);
    }

    #[test]
    fn size_mismatch_is_empty() {
        let p = PermGroup::symmetric(3);
        assert!(subset_transporter(&p, &[0], &[0, 1]).unwrap().is_none());
    }

    #[test]
    fn transporter_matches_enumeration_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let degree = rng.gen_range(3..8);
            let mut img: Vec<usize> = (0..degree).collect();
            for i in (1..degree).rev() {
                let j = rng.gen_range(0..=i);
                img.swap(i, j);
            }
            let gens = vec![Perm::from_images(img).unwrap(), cycle(degree, &[0, 1])];
            let p = PermGroup::new(degree, gens).unwrap();
            if p.order() > 5040 {
                continue;
            }
            let all = brute_elements(&p);
            let ka = rng.gen_range(0..=3.min(degree));
            // random subsets of the same size
            let mut a: Vec<usize> = (0..degree).collect();
            for i in (1..degree).rev() {
                let j = rng.gen_range(0..=i);
                a.swap(i, j);
            }
            let mut b = a.clone();
            for i in (1..degree).rev() {
                let j = rng.gen_range(0..=i);
                b.swap(i, j);
            }
            let a = &a[..ka];
            let b = &b[..ka];
            let bset: std::collections::BTreeSet<usize> = b.iter().copied().collect();
            let expected: Vec<&Perm> = all
                .iter()
                .filter(|pi| {
                    a.iter().map(|&x| pi.apply(x)).collect::<std::collections::BTreeSet<_>>()
                        == bset
                })
                .collect();
            match subset_transporter(&p, a, b).unwrap() {
                None => assert!(expected.is_empty()),
                Some(c) => {
                    assert_eq!(c.size() as usize, expected.len());
                    for e in expected {
                        assert!(c.contains(e));
                    }
                }
            }
        }
    }

    #[test]
    fn string_iso_on_four_cycle() {
        let p = PermGroup::new(4, vec![cycle(4, &[0, 1, 2, 3])]).unwrap();
        let f1 = GroupString::new(vec![1, 2, 2, 2], 2).unwrap();
        let f2 = GroupString::new(vec![2, 1, 2, 2], 2).unwrap();
        let c = string_isomorphisms(&p, &f1, &f2).unwrap().unwrap();
        assert_eq!(c.size(), 1);
        // the unique isomorphism is the 4-cycle itself: f1^pi(x) = f1(x^{pi^{-1}})
        let pi = cycle(4, &[0, 1, 2, 3]);
        assert!(c.contains(&pi));
    }

    #[test]
    fn constant_strings_give_whole_group() {
        let p = PermGroup::symmetric(4);
        let f = GroupString::new(vec![1, 1, 1, 1], 1).unwrap();
        let c = string_isomorphisms(&p, &f, &f).unwrap().unwrap();
        assert_eq!(c.size(), 24);
    }

    #[test]
    fn incompatible_strings_are_empty() {
        let p = PermGroup::new(4, vec![cycle(4, &[0, 1, 2, 3])]).unwrap();
        let f1 = GroupString::new(vec![1, 1, 2, 2], 2).unwrap();
        let f2 = GroupString::new(vec![1, 2, 1, 2], 2).unwrap();
        assert!(string_isomorphisms(&p, &f1, &f2).unwrap().is_none());
    }

    #[test]
    fn iso_group_stabilizes_and_rep_maps() {
        let p = PermGroup::symmetric(5);
        let f1 = GroupString::new(vec![1, 2, 3, 3, 3], 3).unwrap();
        let f2 = GroupString::new(vec![3, 3, 1, 2, 3], 3).unwrap();
        let c = string_isomorphisms(&p, &f1, &f2).unwrap().unwrap();
        // every subgroup generator stabilizes f1
        for g in c.group.generators() {
            let inv = g.inverse();
            for x in 0..5 {
                assert_eq!(f1.letters[inv.apply(x)], f1.letters[x]);
            }
        }
        // the representative maps f1 to f2
        let inv = c.rep.inverse();
        for x in 0..5 {
            assert_eq!(f1.letters[inv.apply(x)], f2.letters[x]);
        }
    }

    #[test]
    fn iso_composition_is_contained() {
        // Iso(f1,f2) . Iso(f2,f3) subset of Iso(f1,f3), spot-checked
        let p = PermGroup::symmetric(4);
        let f1 = GroupString::new(vec![1, 2, 2, 2], 2).unwrap();
        let f2 = GroupString::new(vec![2, 1, 2, 2], 2).unwrap();
        let f3 = GroupString::new(vec![2, 2, 1, 2], 2).unwrap();
        let c12 = string_isomorphisms(&p, &f1, &f2).unwrap().unwrap();
        let c23 = string_isomorphisms(&p, &f2, &f3).unwrap().unwrap();
        let c13 = string_isomorphisms(&p, &f1, &f3).unwrap().unwrap();
        for a in c12.elements_capped(50).unwrap() {
            for b in c23.elements_capped(50).unwrap() {
                assert!(c13.contains(&a.then(&b)));
            }
        }
    }

    #[test]
    fn iso_of_string_with_itself_contains_identity() {
        let p = PermGroup::symmetric(4);
        let f = GroupString::new(vec![1, 2, 1, 2], 2).unwrap();
        let c = string_isomorphisms(&p, &f, &f).unwrap().unwrap();
        assert!(c.contains(&Perm::identity(4)));
    }

    #[test]
    fn cap_is_enforced() {
        let p = PermGroup::symmetric(30);
        let a: Vec<usize> = (0..23).collect();
        let b: Vec<usize> = (1..24).collect();
        match subset_transporter(&p, &a, &b) {
            Err(e) => assert!(e.is_resource()),
            Ok(_) => panic!("expected resource error"),
        }
    }
}
