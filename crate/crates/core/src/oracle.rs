//! Budgeted brute-force search for isomorphisms and automorphism groups:
//! backtracking over images of a greedy minimal generating sequence, with
//! partial-map closure and injectivity pruning at every node.
//!
//! The oracle either answers exactly or fails with a resource error. It is
//! never wrong, and it is deliberately superpolynomial: it exists to
//! cross-check the structured pipeline at desk scale.

use crate::cayley::{CayleyGroup, GroupHom};
use crate::error::{Error, Result};
use crate::perm::{Chain, Perm, PermGroup};

pub const DEFAULT_ORACLE_BUDGET: u128 = 200_000_000;

struct Counter {
    used: u128,
    cap: u128,
}

impl Counter {
    fn tick(&mut self, n: u128) -> Result<()> {
        self.used += n;
        if self.used > self.cap {
            Err(Error::resource("oracle node budget", self.cap))
        } else {
            Ok(())
        }
    }
}

struct PartialMap {
    /// source element -> target element, u32::MAX when unset
    map: Vec<u32>,
    /// sorted list of mapped source elements
    elems: Vec<u32>,
    /// target elements already used (injectivity)
    used: Vec<bool>,
}

impl PartialMap {
    fn identity_seed(n: usize, m: usize) -> Self {
        let mut map = vec![u32::MAX; n];
        map[0] = 0;
        let mut used = vec![false; m];
        used[0] = true;
        PartialMap { map, elems: vec![0], used }
    }

    /// Extends by one generator image and closes; None on conflict.
    fn extend(
        &self,
        g: &CayleyGroup,
        h: &CayleyGroup,
        gens: &[usize],
        images: &[usize],
        counter: &mut Counter,
    ) -> Result<Option<PartialMap>> {
        let mut map = self.map.clone();
        let mut used = self.used.clone();
        let mut elems = self.elems.clone();
        let (new_gen, new_img) = (gens[gens.len() - 1], images[images.len() - 1]);
        if map[new_gen] == u32::MAX {
            if used[new_img] {
                return Ok(None);
            }
            map[new_gen] = new_img as u32;
            used[new_img] = true;
            elems.push(new_gen as u32);
        } else if map[new_gen] as usize != new_img {
            return Ok(None);
        }
        // close under right multiplication by all chosen generators
        let mut head = 0;
        while head < elems.len() {
            let e = elems[head] as usize;
            head += 1;
            for (i, &s) in gens.iter().enumerate() {
                counter.tick(1)?;
                let es = g.mul(e, s);
                let img = h.mul(map[e] as usize, images[i]);
                if map[es] == u32::MAX {
                    if used[img] {
                        return Ok(None);
                    }
                    map[es] = img as u32;
                    used[img] = true;
                    elems.push(es as u32);
                } else if map[es] as usize != img {
                    return Ok(None);
                }
            }
        }
        Ok(Some(PartialMap { map, elems, used }))
    }
}

fn order_buckets(h: &CayleyGroup) -> std::collections::BTreeMap<usize, Vec<usize>> {
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for x in 0..h.order() {
        buckets.entry(h.order_of(x)).or_default().push(x);
    }
    buckets
}

/// Backtracking search. With `collect_all` the full list of completed maps
/// is gathered (used for automorphism groups); otherwise the first
/// completed map is returned.
fn search(
    g: &CayleyGroup,
    h: &CayleyGroup,
    collect_all: bool,
    counter: &mut Counter,
) -> Result<Vec<Vec<u32>>> {
    if g.order() != h.order() {
        return Ok(Vec::new());
    }
    // order census must match
    let gb = order_buckets(g);
    let hb = order_buckets(h);
    if gb.keys().collect::<Vec<_>>() != hb.keys().collect::<Vec<_>>()
        || gb.iter().any(|(k, v)| hb[k].len() != v.len())
    {
        return Ok(Vec::new());
    }
    let gens = g.generating_set();
    if gens.is_empty() {
        return Ok(vec![vec![0]]);
    }
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<(PartialMap, Vec<usize>)> = Vec::new();
    let root = PartialMap::identity_seed(g.order(), h.order());
    // iterative depth-first search: frames carry (state, chosen images)
    fn descend(
        g: &CayleyGroup,
        h: &CayleyGroup,
        gens: &[usize],
        state: &PartialMap,
        images: &mut Vec<usize>,
        hb: &std::collections::BTreeMap<usize, Vec<usize>>,
        counter: &mut Counter,
        collect_all: bool,
        found: &mut Vec<Vec<u32>>,
    ) -> Result<bool> {
        let depth = images.len();
        if depth == gens.len() {
            debug_assert_eq!(state.elems.len(), g.order());
            found.push(state.map.clone());
            return Ok(!collect_all);
        }
        let want_order = g.order_of(gens[depth]);
        for &cand in hb.get(&want_order).map(|v| v.as_slice()).unwrap_or(&[]) {
            counter.tick(1)?;
            images.push(cand);
            let next = state.extend(g, h, &gens[..depth + 1], images, counter)?;
            if let Some(next) = next {
                if descend(g, h, gens, &next, images, hb, counter, collect_all, found)? {
                    images.pop();
                    return Ok(true);
                }
            }
            images.pop();
        }
        Ok(false)
    }
    let mut images = Vec::new();
    descend(g, h, &gens, &root, &mut images, &hb, counter, collect_all, &mut found)?;
    drop(stack.drain(..));
    Ok(found)
}

/// First isomorphism found, or certified absence, or a resource error.
pub fn oracle_isomorphism(
    g: &CayleyGroup,
    h: &CayleyGroup,
    budget: u128,
) -> Result<Option<GroupHom>> {
    let mut counter = Counter { used: 0, cap: budget };
    let maps = search(g, h, false, &mut counter)?;
    Ok(maps.into_iter().next().map(|map| GroupHom {
        src_order: g.order(),
        dst_order: h.order(),
        images: map,
    }))
}

/// The full automorphism group by exhaustive backtracking, as a permutation
/// group with the exact order certified against the completed-map count.
pub struct AutOracle {
    pub group: PermGroup,
    pub count: u128,
}

pub fn oracle_automorphisms(g: &CayleyGroup, budget: u128) -> Result<AutOracle> {
    let mut counter = Counter { used: 0, cap: budget };
    let maps = search(g, g, true, &mut counter)?;
    let count = maps.len() as u128;
    let mut chain = Chain::new(g.order(), &[]);
    let mut kept: Vec<Perm> = Vec::new();
    for map in maps {
        let perm = Perm::from_images(map.into_iter().map(|x| x as usize).collect())?;
        if !chain.contains(&perm) {
            chain.insert(perm.clone());
            kept.push(perm);
        }
    }
    if chain.order() != count {
        return Err(Error::Inconsistency("oracle generator reduction lost elements".into()));
    }
    Ok(AutOracle { group: PermGroup::new(g.order(), kept)?, count })
}
