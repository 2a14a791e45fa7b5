//! Finite groups given by their full multiplication tables.
//!
//! Elements are indices `0..n`, the identity is always index `0`, and the
//! table is stored row-major: `table[g*n + h] = g*h`. Everything downstream
//! (subgroups, quotients, Sylow subgroups, the solvable radical, direct and
//! semidirect products) works on this representation.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::perm::Perm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Full associativity is checked up to this order; above it, 10*n^2 random
/// triples are sampled with a fixed seed.
pub const FULL_ASSOC_BOUND: usize = 512;

#[derive(Clone)]
pub struct CayleyGroup {
    pub name: Option<String>,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl std::fmt::Debug for CayleyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CayleyGroup(order {}", self.n)?;
        if let Some(name) = &self.name {
            write!(f, ", {}", name)?;
        }
        write!(f, ")")
    }
}

impl CayleyGroup {
    /// Builds a group from a raw table, validating the group axioms.
    ///
    /// Identity must be element 0 (use [`reindex_identity`] on foreign
    /// tables first). Latin-square and identity checks are exact;
    /// associativity is exact up to [`FULL_ASSOC_BOUND`] and sampled above.
    pub fn from_table(n: usize, table: Vec<u32>, name: Option<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        for &x in &table {
            if x as usize >= n {
                return Err(Error::IndexOutOfRange { index: x as usize, order: n });
            }
        }
        // row 0 and column 0 must be the identity permutation
        for i in 0..n {
            if table[i] != i as u32 {
                return Err(Error::InvalidTable(format!("row 0 is not the identity at column {i}")));
            }
            if table[i * n] != i as u32 {
                return Err(Error::InvalidTable(format!("column 0 is not the identity at row {i}")));
            }
        }
        // Latin square: every row and column is a permutation
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!("row {r} repeats element {v}")));
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!("column {c} repeats element {v}")));
                }
                seen[v] = true;
            }
        }
        let g = Self::from_table_unchecked(n, table, name)?;
        g.check_associativity()?;
        Ok(g)
    }

    /// Builds a group from a table produced by a construction that is
    /// associative by design. Inverses are still computed and the identity
    /// row/column asserted.
    pub fn from_table_unchecked(n: usize, table: Vec<u32>, name: Option<String>) -> Result<Self> {
        let mut inv = vec![u32::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if table[g * n + h] == 0 {
                    inv[g] = h as u32;
                    break;
                }
            }
            if inv[g] == u32::MAX {
                return Err(Error::InvalidTable(format!("element {g} has no inverse")));
            }
        }
        Ok(CayleyGroup { name, n, table, inv })
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.n;
        if n <= FULL_ASSOC_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10 * n * n {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// h^{-1} g h.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// [a, b] = a^{-1} b^{-1} a b.
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let mut e = e.rem_euclid(self.order_of(g) as i64) as u64;
        let mut base = g;
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn order_of(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_set();
        for &a in &gens {
            for &b in &gens {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn exponent(&self) -> usize {
        let mut e: usize = 1;
        for g in 0..self.n {
            e = lcm(e, self.order_of(g));
        }
        e
    }

    /// Greedy minimal generating sequence: repeatedly adjoin the smallest
    /// element outside the current closure. At most log2(n) elements.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = Subgroup::trivial(self);
        for g in 1..self.n {
            if !sub.contains(g) {
                gens.push(g);
                sub = sub.extended(self, g);
                if sub.order() == self.n {
                    break;
                }
            }
        }
        gens
    }

    /// The distinct primes dividing the group order, ascending.
    pub fn primes(&self) -> Vec<u32> {
        prime_factors(self.n as u64).into_iter().map(|(p, _)| p as u32).collect()
    }

    /// Conjugacy class of g, sorted.
    pub fn conjugacy_class(&self, g: usize) -> Vec<usize> {
        let mut seen = Bits::new(self.n);
        let mut class = Vec::new();
        for h in 0..self.n {
            let c = self.conj(g, h);
            if !seen.get(c) {
                seen.set(c);
                class.push(c);
            }
        }
        class.sort_unstable();
        class
    }

    /// Conjugacy classes, each sorted, ordered by minimal representative.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = Bits::new(self.n);
        let mut classes = Vec::new();
        for g in 0..self.n {
            if !assigned.get(g) {
                let class = self.conjugacy_class(g);
                for &c in &class {
                    assigned.set(c);
                }
                classes.push(class);
            }
        }
        classes
    }

    /// The group relabeled along a bijection sigma with sigma(0) = 0;
    /// table'[sigma(a)][sigma(b)] = sigma(ab). The result is isomorphic to
    /// the original via sigma.
    pub fn relabeled(&self, sigma: &Perm) -> Result<CayleyGroup> {
        if sigma.degree() != self.n {
            return Err(Error::DegreeMismatch(sigma.degree(), self.n));
        }
        if sigma.apply(0) != 0 {
            return Err(Error::Precondition("relabeling must fix the identity".into()));
        }
        let n = self.n;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[sigma.apply(a) * n + sigma.apply(b)] = sigma.apply(self.mul(a, b)) as u32;
            }
        }
        CayleyGroup::from_table_unchecked(n, table, self.name.clone())
    }

    /// Raw table access (row-major).
    pub fn table(&self) -> &[u32] {
        &self.table
    }
}

/// A subgroup of an ambient [`CayleyGroup`], stored as a sorted element
/// list plus a membership bitset. The ambient group is passed to every
/// operation rather than stored.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: Vec<u32>,
    pub gens: Vec<u32>,
    member: Bits,
}

impl Subgroup {
    pub fn trivial(g: &CayleyGroup) -> Self {
        let mut member = Bits::new(g.order());
        member.set(0);
        Subgroup { elements: vec![0], gens: Vec::new(), member }
    }

    pub fn whole(g: &CayleyGroup) -> Self {
        let mut member = Bits::new(g.order());
        for x in 0..g.order() {
            member.set(x);
        }
        Subgroup {
            elements: (0..g.order() as u32).collect(),
            gens: g.generating_set().iter().map(|&x| x as u32).collect(),
            member,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(|&x| x as usize)
    }

    pub fn is_whole(&self, g: &CayleyGroup) -> bool {
        self.order() == g.order()
    }

    /// The subgroup generated by this subgroup together with one more
    /// element. Only genuinely new generators are recorded.
    pub fn extended(&self, g: &CayleyGroup, x: usize) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(x as u32);
        let mut member = self.member.clone();
        let mut list: Vec<u32> = self.elements.clone();
        // close the old element set under right-multiplication by words in
        // the new generator set
        let mut frontier: Vec<usize> = Vec::new();
        for &e in &self.elements {
            let w = g.mul(e as usize, x);
            if !member.get(w) {
                member.set(w);
                list.push(w as u32);
                frontier.push(w);
            }
        }
        while let Some(e) = frontier.pop() {
            for &s in &gens {
                let w = g.mul(e, s as usize);
                if !member.get(w) {
                    member.set(w);
                    list.push(w as u32);
                    frontier.push(w);
                }
            }
        }
        list.sort_unstable();
        Subgroup { elements: list, gens, member }
    }

    pub fn is_normal(&self, g: &CayleyGroup) -> bool {
        // conjugating the generators by group generators suffices
        let ggens = g.generating_set();
        for &s in &self.gens {
            for &x in &ggens {
                if !self.contains(g.conj(s as usize, x)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian(&self, g: &CayleyGroup) -> bool {
        for &a in &self.gens {
            for &b in &self.gens {
                if g.mul(a as usize, b as usize) != g.mul(b as usize, a as usize) {
                    return false;
                }
            }
        }
        true
    }

    /// Extract this subgroup as a standalone group with its own indexing,
    /// together with the embedding new-index -> ambient-index. Index 0 is
    /// the identity.
    pub fn as_group(&self, g: &CayleyGroup) -> Result<(CayleyGroup, Vec<u32>)> {
        let m = self.order();
        let embed: Vec<u32> = self.elements.clone(); // sorted, 0 first
        debug_assert_eq!(embed[0], 0);
        let mut back = vec![u32::MAX; g.order()];
        for (i, &e) in embed.iter().enumerate() {
            back[e as usize] = i as u32;
        }
        let mut table = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                let p = g.mul(embed[a] as usize, embed[b] as usize);
                let q = back[p];
                if q == u32::MAX {
                    return Err(Error::Inconsistency("subgroup not closed".into()));
                }
                table[a * m + b] = q;
            }
        }
        Ok((CayleyGroup::from_table_unchecked(m, table, None)?, embed))
    }
}

/// Subgroup generated by a set of elements (breadth-first product closure).
pub fn closure(g: &CayleyGroup, set: &[usize]) -> Result<Subgroup> {
    let mut sub = Subgroup::trivial(g);
    for &x in set {
        if x >= g.order() {
            return Err(Error::IndexOutOfRange { index: x, order: g.order() });
        }
        sub = sub.extended(g, x);
    }
    // record the caller's generators verbatim
    sub.gens = set.iter().map(|&x| x as u32).collect();
    Ok(sub)
}

/// Normal closure of a set: the smallest normal subgroup containing it.
pub fn normal_closure(g: &CayleyGroup, set: &[usize]) -> Subgroup {
    let ggens = g.generating_set();
    let mut sub = Subgroup::trivial(g);
    for &x in set {
        sub = sub.extended(g, x);
    }
    loop {
        let mut new_elem = None;
        'outer: for &e in &sub.elements {
            for &x in &ggens {
                let c = g.conj(e as usize, x);
                if !sub.contains(c) {
                    new_elem = Some(c);
                    break 'outer;
                }
            }
        }
        match new_elem {
            Some(c) => sub = sub.extended(g, c),
            None => break,
        }
    }
    sub
}

/// Centralizer of a set of elements.
pub fn centralizer(g: &CayleyGroup, set: &[usize]) -> Subgroup {
    let mut elems = Vec::new();
    for x in 0..g.order() {
        if set.iter().all(|&s| g.mul(x, s) == g.mul(s, x)) {
            elems.push(x);
        }
    }
    subgroup_from_elements(g, &elems)
}

/// Normalizer of a subgroup.
pub fn normalizer(g: &CayleyGroup, h: &Subgroup) -> Subgroup {
    let mut elems = Vec::new();
    for x in 0..g.order() {
        if h.gens.iter().all(|&s| h.contains(g.conj(s as usize, x)))
            && h.gens.iter().all(|&s| h.contains(g.conj(s as usize, g.inv(x))))
        {
            elems.push(x);
        }
    }
    subgroup_from_elements(g, &elems)
}

pub fn centre(g: &CayleyGroup) -> Subgroup {
    let gens: Vec<usize> = g.generating_set();
    centralizer(g, &gens)
}

/// Wraps a known-closed element set as a Subgroup, computing a reduced
/// generating set.
pub fn subgroup_from_elements(g: &CayleyGroup, elems: &[usize]) -> Subgroup {
    let mut sub = Subgroup::trivial(g);
    let mut gens = Vec::new();
    for &x in elems {
        if !sub.contains(x) {
            gens.push(x as u32);
            sub = sub.extended(g, x);
        }
    }
    debug_assert_eq!(sub.order(), elems.len(), "element set not closed");
    sub.gens = gens;
    sub
}

/// Derived subgroup [S,S]: normal closure in S of commutators of generators.
pub fn derived_subgroup(g: &CayleyGroup, s: &Subgroup) -> Subgroup {
    let sgens: Vec<u32> =
        if s.gens.is_empty() { vec![] } else { s.gens.clone() };
    let mut sub = Subgroup::trivial(g);
    for &a in &sgens {
        for &b in &sgens {
            let c = g.comm(a as usize, b as usize);
            if !sub.contains(c) {
                sub = sub.extended(g, c);
            }
        }
    }
    // close under conjugation by S
    loop {
        let mut new_elem = None;
        'outer: for &e in &sub.elements {
            for &x in &sgens {
                let c = g.conj(e as usize, x as usize);
                if !sub.contains(c) {
                    new_elem = Some(c);
                    break 'outer;
                }
            }
        }
        match new_elem {
            Some(c) => sub = sub.extended(g, c),
            None => break,
        }
    }
    sub
}

/// Derived series S > [S,S] > ... until stable. The last entry is trivial
/// iff S is solvable.
pub fn derived_series(g: &CayleyGroup, s: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![s.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(g, last);
        if next.order() == last.order() {
            break;
        }
        series.push(next);
        if series.last().unwrap().order() == 1 {
            break;
        }
    }
    series
}

pub fn is_solvable(g: &CayleyGroup, s: &Subgroup) -> bool {
    derived_series(g, s).last().unwrap().order() == 1
}

/// Largest normal solvable subgroup, as the join of all solvable normal
/// closures of single elements.
pub fn solvable_radical(g: &CayleyGroup) -> Subgroup {
    let mut rad = Subgroup::trivial(g);
    for class in g.conjugacy_classes() {
        let x = class[0];
        if rad.contains(x) {
            continue;
        }
        let nc = normal_closure(g, &[x]);
        if is_solvable(g, &nc) {
            for &e in &nc.elements {
                if !rad.contains(e as usize) {
                    rad = rad.extended(g, e as usize);
                }
            }
        }
    }
    rad
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The p-part of n.
pub fn p_part(n: usize, p: u32) -> usize {
    let mut m = n;
    let mut part = 1;
    while m % p as usize == 0 {
        m /= p as usize;
        part *= p as usize;
    }
    part
}

/// A Sylow p-subgroup, by normalizer climbing: a p-subgroup that is not yet
/// Sylow has index divisible by p in its normalizer, so some coset of order
/// p in N(P)/P extends it.
pub fn sylow_subgroup(g: &CayleyGroup, p: u32) -> Result<Subgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(g.order(), p);
    if target == 1 {
        return Ok(Subgroup::trivial(g));
    }
    // seed with the p-part of any element of order divisible by p
    let mut sub = Subgroup::trivial(g);
    for x in 1..g.order() {
        let o = g.order_of(x);
        if o % p as usize == 0 {
            let q = o / p_part(o, p);
            sub = sub.extended(g, g.pow(x, q as i64));
            break;
        }
    }
    while sub.order() < target {
        let norm = normalizer(g, &sub);
        // find y in N(P) \ P with y^p in P: the coset yP has order p
        let mut extended = false;
        for &y in &norm.elements {
            let y = y as usize;
            if sub.contains(y) {
                continue;
            }
            if sub.contains(g.pow(y, p as i64)) {
                sub = sub.extended(g, y);
                extended = true;
                break;
            }
        }
        if !extended {
            return Err(Error::Inconsistency(
                "Sylow climbing stalled; input is not a group".into(),
            ));
        }
    }
    Ok(sub)
}

/// All elements of p-power order (including the identity).
pub fn p_elements(g: &CayleyGroup, p: u32) -> Vec<usize> {
    (0..g.order())
        .filter(|&x| {
            let mut o = g.order_of(x);
            while o % p as usize == 0 {
                o /= p as usize;
            }
            o == 1
        })
        .collect()
}

/// Subgroup generated by all p-elements.
pub fn subgroup_generated_by_p_elements(g: &CayleyGroup, p: u32) -> Subgroup {
    let elems = p_elements(g, p);
    let mut sub = Subgroup::trivial(g);
    let mut gens = Vec::new();
    for x in elems {
        if !sub.contains(x) {
            gens.push(x as u32);
            sub = sub.extended(g, x);
        }
    }
    sub.gens = gens;
    sub
}

/// True iff every Sylow subgroup is abelian.
pub fn is_agroup(g: &CayleyGroup) -> bool {
    g.primes().into_iter().all(|p| {
        sylow_subgroup(g, p).map(|s| s.is_abelian(g)).unwrap_or(false)
    })
}

/// Which prime (if any) witnesses failure of the A-group property.
pub fn agroup_violation(g: &CayleyGroup) -> Option<u32> {
    g.primes().into_iter().find(|&p| {
        sylow_subgroup(g, p).map(|s| !s.is_abelian(g)).unwrap_or(true)
    })
}

/// A homomorphism between table groups, given element-wise.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub src_order: usize,
    pub dst_order: usize,
    pub images: Vec<u32>,
}

impl GroupHom {
    pub fn identity(g: &CayleyGroup) -> Self {
        GroupHom {
            src_order: g.order(),
            dst_order: g.order(),
            images: (0..g.order() as u32).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// Verifies the homomorphism property on all pairs.
    pub fn validate(&self, src: &CayleyGroup, dst: &CayleyGroup) -> Result<()> {
        if self.images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not mapped to identity".into()));
        }
        for a in 0..src.order() {
            for b in 0..src.order() {
                if self.apply(src.mul(a, b)) != dst.mul(self.apply(a), self.apply(b)) {
                    return Err(Error::NotHomomorphism(format!("fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self, src: &CayleyGroup) -> Subgroup {
        let elems: Vec<usize> = (0..src.order()).filter(|&x| self.apply(x) == 0).collect();
        subgroup_from_elements(src, &elems)
    }

    pub fn image(&self, dst: &CayleyGroup) -> Subgroup {
        let mut seen = Bits::new(dst.order());
        let mut elems = Vec::new();
        for &y in &self.images {
            if !seen.get(y as usize) {
                seen.set(y as usize);
                elems.push(y as usize);
            }
        }
        elems.sort_unstable();
        subgroup_from_elements(dst, &elems)
    }

    /// self followed by other.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        debug_assert_eq!(self.dst_order, other.src_order);
        GroupHom {
            src_order: self.src_order,
            dst_order: other.dst_order,
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        if self.src_order != self.dst_order {
            return false;
        }
        let mut seen = Bits::new(self.dst_order);
        for &y in &self.images {
            if seen.get(y as usize) {
                return false;
            }
            seen.set(y as usize);
        }
        true
    }
}

/// Extends a generator-image assignment to a full homomorphism by closing
/// the generated subgroup, or reports why it is not one. Images live in an
/// arbitrary target with a supplied multiplication.
///
/// Returns the images of all elements of <gens>, indexed by source element;
/// elements outside the span keep u32::MAX.
pub fn extend_hom_images<M>(
    src: &CayleyGroup,
    gens: &[usize],
    gen_images: &[usize],
    dst_identity: usize,
    mut dst_mul: M,
) -> Result<Vec<u32>>
where
    M: FnMut(usize, usize) -> usize,
{
    if gens.len() != gen_images.len() {
        return Err(Error::Precondition("generator/image length mismatch".into()));
    }
    let n = src.order();
    let mut images = vec![u32::MAX; n];
    images[0] = dst_identity as u32;
    let mut known: Vec<usize> = vec![0];
    let mut head = 0;
    while head < known.len() {
        let a = known[head];
        head += 1;
        for (i, &g) in gens.iter().enumerate() {
            let ag = src.mul(a, g);
            let img = dst_mul(images[a] as usize, gen_images[i]);
            if images[ag] == u32::MAX {
                images[ag] = img as u32;
                known.push(ag);
            } else if images[ag] != img as u32 {
                return Err(Error::NotHomomorphism(format!(
                    "inconsistent image for element {ag}"
                )));
            }
        }
    }
    Ok(images)
}

/// Quotient by a normal subgroup: the coset table plus the projection.
/// Coset representatives are the minimal elements, sorted, so the identity
/// coset is index 0.
pub fn quotient(g: &CayleyGroup, n_sub: &Subgroup) -> Result<(CayleyGroup, GroupHom)> {
    if !n_sub.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut coset_min = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_min[x] == u32::MAX {
            // coset xN
            let mut min = x;
            let members: Vec<usize> = n_sub.iter().map(|e| g.mul(x, e)).collect();
            for &m in &members {
                min = min.min(m);
            }
            for &m in &members {
                coset_min[m] = min as u32;
            }
            reps.push(min as u32);
        }
    }
    reps.sort_unstable();
    let q = reps.len();
    let mut rep_index = vec![u32::MAX; n];
    for (i, &r) in reps.iter().enumerate() {
        rep_index[r as usize] = i as u32;
    }
    let mut table = vec![0u32; q * q];
    for a in 0..q {
        for b in 0..q {
            let p = g.mul(reps[a] as usize, reps[b] as usize);
            table[a * q + b] = rep_index[coset_min[p] as usize];
        }
    }
    let quotient_group = CayleyGroup::from_table_unchecked(q, table, None)?;
    let hom = GroupHom {
        src_order: n,
        dst_order: q,
        images: (0..n).map(|x| rep_index[coset_min[x] as usize]).collect(),
    };
    Ok((quotient_group, hom))
}

/// Direct product with embeddings; element (a, b) has index a*|B| + b.
pub fn direct_product(a: &CayleyGroup, b: &CayleyGroup) -> (CayleyGroup, GroupHom, GroupHom) {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for x1 in 0..na {
        for y1 in 0..nb {
            let e1 = x1 * nb + y1;
            for x2 in 0..na {
                for y2 in 0..nb {
                    let e2 = x2 * nb + y2;
                    table[e1 * n + e2] = (a.mul(x1, x2) * nb + b.mul(y1, y2)) as u32;
                }
            }
        }
    }
    let g = CayleyGroup::from_table_unchecked(n, table, None).expect("product table");
    let embed_a = GroupHom {
        src_order: na,
        dst_order: n,
        images: (0..na).map(|x| (x * nb) as u32).collect(),
    };
    let embed_b =
        GroupHom { src_order: nb, dst_order: n, images: (0..nb as u32).collect() };
    (g, embed_a, embed_b)
}

/// Semidirect product A x| H for abelian A. The action gives, per H-element
/// h, the automorphism of A it induces; the product convention is
/// (a, h)(b, k) = (a + b^{action(h)^{-1}}, hk), which makes conjugation of
/// the embedded H on the embedded A equal the action: h^{-1} a h =
/// a^{action(h)}.
///
/// Element (a, h) has index a*|H| + h.
pub fn semidirect_product(
    a: &CayleyGroup,
    h: &CayleyGroup,
    action: &[Perm],
) -> Result<(CayleyGroup, GroupHom, GroupHom)> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if action.len() != h.order() {
        return Err(Error::Precondition("action must give one automorphism per H-element".into()));
    }
    for (x, p) in action.iter().enumerate() {
        if p.degree() != a.order() {
            return Err(Error::DegreeMismatch(p.degree(), a.order()));
        }
        // automorphism check
        for u in 0..a.order() {
            for v in 0..a.order() {
                if p.apply(a.mul(u, v)) != a.mul(p.apply(u), p.apply(v)) {
                    return Err(Error::NotHomomorphism(format!(
                        "action of H-element {x} is not an automorphism of A"
                    )));
                }
            }
        }
    }
    // homomorphism check on the table
    for x in 0..h.order() {
        for y in 0..h.order() {
            let composed = action[x].then(&action[y]);
            if composed != action[h.mul(x, y)] {
                return Err(Error::NotHomomorphism(format!(
                    "action is not a homomorphism at H-pair ({x},{y})"
                )));
            }
        }
    }
    let inv_action: Vec<Perm> = action.iter().map(|p| p.inverse()).collect();
    let (na, nh) = (a.order(), h.order());
    let n = na * nh;
    let mut table = vec![0u32; n * n];
    for a1 in 0..na {
        for h1 in 0..nh {
            let e1 = a1 * nh + h1;
            for b in 0..na {
                for h2 in 0..nh {
                    let e2 = b * nh + h2;
                    let part_a = a.mul(a1, inv_action[h1].apply(b));
                    table[e1 * n + e2] = (part_a * nh + h.mul(h1, h2)) as u32;
                }
            }
        }
    }
    let g = CayleyGroup::from_table_unchecked(n, table, None)?;
    let embed_a = GroupHom {
        src_order: na,
        dst_order: n,
        images: (0..na).map(|x| (x * nh) as u32).collect(),
    };
    let embed_h =
        GroupHom { src_order: nh, dst_order: n, images: (0..nh as u32).collect() };
    Ok((g, embed_a, embed_h))
}

/// Cyclic group of order n.
pub fn cyclic_group(n: usize) -> CayleyGroup {
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    CayleyGroup::from_table_unchecked(n, table, Some(format!("cyclic({n})"))).unwrap()
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian_group(orders: &[usize]) -> CayleyGroup {
    let mut g = cyclic_group(orders.first().copied().unwrap_or(1));
    for &o in &orders[1..] {
        let c = cyclic_group(o);
        g = direct_product(&g, &c).0;
    }
    g.name = Some(format!(
        "abelian({})",
        orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",")
    ));
    g
}

fn perms_lex(n: usize) -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        all.push(cur.clone());
        // next lexicographic permutation
        let mut i = n.wrapping_sub(2);
        while i != usize::MAX && cur[i] >= cur[i + 1] {
            i = i.wrapping_sub(1);
        }
        if i == usize::MAX {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i] {
            j -= 1;
        }
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    all
}

fn group_from_perms(perms: Vec<Vec<u32>>, name: String) -> CayleyGroup {
    let n = perms.len();
    let mut index: std::collections::HashMap<Vec<u32>, u32> = std::collections::HashMap::new();
    for (i, p) in perms.iter().enumerate() {
        index.insert(p.clone(), i as u32);
    }
    let mut table = vec![0u32; n * n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            // composition p then q
            let comp: Vec<u32> = p.iter().map(|&x| q[x as usize]).collect();
            table[i * n + j] = index[&comp];
        }
    }
    CayleyGroup::from_table_unchecked(n, table, Some(name)).unwrap()
}

/// Symmetric group on m points, elements in lexicographic order (so the
/// identity is element 0).
pub fn sym_group(m: usize) -> CayleyGroup {
    group_from_perms(perms_lex(m), format!("sym({m})"))
}

/// Alternating group on m points, even permutations in lexicographic order.
pub fn alt_group(m: usize) -> CayleyGroup {
    let all = perms_lex(m);
    let even: Vec<Vec<u32>> = all
        .into_iter()
        .filter(|p| {
            let mut inversions = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            inversions % 2 == 0
        })
        .collect();
    group_from_perms(even, format!("alt({m})"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> CayleyGroup {
        sym_group(3)
    }

    #[test]
    fn sym3_table_is_valid() {
        let g = sym3();
        assert_eq!(g.order(), 6);
        // re-validate through the checked constructor
        let t = g.table().to_vec();
        CayleyGroup::from_table(6, t, None).unwrap();
    }

    #[test]
    fn closure_of_transposition_and_cycle_is_sym3() {
        let g = sym3();
        // element 1 = [0,2,1] is a transposition, element 3 = [1,2,0] a 3-cycle
        assert_eq!(g.order_of(1), 2);
        assert_eq!(g.order_of(3), 3);
        let sub = closure(&g, &[1, 3]).unwrap();
        assert_eq!(sub.order(), 6);
    }

    #[test]
    fn closure_of_empty_set_is_trivial() {
        let g = cyclic_group(12);
        let sub = closure(&g, &[]).unwrap();
        assert_eq!(sub.order(), 1);
    }

    #[test]
    fn closure_in_cyclic12_of_order4_element() {
        let g = cyclic_group(12);
        // element 3 has order 4; oracle: enumerate its powers
        assert_eq!(g.order_of(3), 4);
        let mut powers = vec![];
        let mut x = 0;
        loop {
            powers.push(x);
            x = g.mul(x, 3);
            if x == 0 {
                break;
            }
        }
        powers.sort_unstable();
        let sub = closure(&g, &[3]).unwrap();
        let got: Vec<usize> = sub.iter().collect();
        assert_eq!(got, powers);
        assert_eq!(sub.order(), 4);
    }

    #[test]
    fn radical_of_alt5_is_trivial() {
        let g = alt_group(5);
        // oracle: no nontrivial normal closure of a single element is solvable
        for class in g.conjugacy_classes() {
            let x = class[0];
            if x != 0 {
                let nc = normal_closure(&g, &[x]);
                assert!(!is_solvable(&g, &nc));
            }
        }
        assert_eq!(solvable_radical(&g).order(), 1);
    }

    #[test]
    fn radical_of_abelian_is_whole() {
        let g = cyclic_group(12);
        assert_eq!(solvable_radical(&g).order(), 12);
    }

    #[test]
    fn radical_of_sym3_times_alt5_is_sym3_factor() {
        let s3 = sym_group(3);
        let a5 = alt_group(5);
        let (g, embed_s3, _) = direct_product(&s3, &a5);
        let rad = solvable_radical(&g);
        assert_eq!(rad.order(), 6);
        for x in 0..6 {
            assert!(rad.contains(embed_s3.apply(x)));
        }
    }

    #[test]
    fn sylow_examples() {
        let c6 = cyclic_group(6);
        let s = sylow_subgroup(&c6, 2).unwrap();
        assert_eq!(s.order(), 2);

        let a4 = alt_group(4);
        let v4 = sylow_subgroup(&a4, 2).unwrap();
        assert_eq!(v4.order(), 4);
        // oracle: the Klein subgroup is the unique subgroup of order 4
        for e in v4.iter() {
            assert!(e == 0 || a4.order_of(e) == 2);
        }

        let s3 = sym3();
        let p3 = sylow_subgroup(&s3, 3).unwrap();
        assert_eq!(p3.order(), 3);
    }

    #[test]
    fn sylow_order_is_exact_p_part() {
        for g in [sym_group(4), alt_group(5), cyclic_group(60)] {
            for p in g.primes() {
                let s = sylow_subgroup(&g, p).unwrap();
                assert_eq!(s.order(), p_part(g.order(), p));
            }
        }
    }

    #[test]
    fn sylow_rejects_non_prime() {
        let g = cyclic_group(6);
        assert!(matches!(sylow_subgroup(&g, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn derived_series_examples() {
        let s3 = sym3();
        let series = derived_series(&s3, &Subgroup::whole(&s3));
        let orders: Vec<usize> = series.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![6, 3, 1]);

        let c12 = cyclic_group(12);
        let series = derived_series(&c12, &Subgroup::whole(&c12));
        assert_eq!(series.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![12, 1]);

        let a5 = alt_group(5);
        let series = derived_series(&a5, &Subgroup::whole(&a5));
        assert_eq!(series.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![60]);
        assert!(!is_solvable(&a5, &Subgroup::whole(&a5)));
    }

    #[test]
    fn quotient_examples() {
        let s3 = sym3();
        let (q, _) = quotient(&s3, &Subgroup::whole(&s3)).unwrap();
        assert_eq!(q.order(), 1);

        let a3 = sylow_subgroup(&s3, 3).unwrap();
        let (q, hom) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        hom.validate(&s3, &q).unwrap();

        let a4 = alt_group(4);
        let v4 = sylow_subgroup(&a4, 2).unwrap();
        let (q, hom) = quotient(&a4, &v4).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.order_of(1), 3);
        hom.validate(&a4, &q).unwrap();
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = sym3();
        let c2 = closure(&s3, &[1]).unwrap();
        assert!(matches!(quotient(&s3, &c2), Err(Error::NotNormal)));
    }

    #[test]
    fn trivial_action_semidirect_is_direct_product() {
        let a = cyclic_group(4);
        let h = cyclic_group(3);
        let action: Vec<Perm> = (0..3).map(|_| Perm::identity(4)).collect();
        let (g, _, _) = semidirect_product(&a, &h, &action).unwrap();
        let (d, _, _) = direct_product(&a, &h);
        assert_eq!(g.table(), d.table());
    }

    #[test]
    fn c7_rtimes_c3_is_nonabelian_with_trivial_centre() {
        let a = cyclic_group(7);
        let h = cyclic_group(3);
        // generator of C3 acts by multiplication by 2 (order 3 mod 7)
        let m2 = Perm::from_images((0..7).map(|x| x * 2 % 7).collect()).unwrap();
        let action = vec![Perm::identity(7), m2.clone(), m2.then(&m2)];
        let (g, _, _) = semidirect_product(&a, &h, &action).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        assert_eq!(centre(&g).order(), 1);
    }

    #[test]
    fn semidirect_conjugation_matches_action() {
        // round-trip: conjugation of embedded H on embedded A equals the action
        let a = cyclic_group(7);
        let h = cyclic_group(3);
        let m2 = Perm::from_images((0..7).map(|x| x * 2 % 7).collect()).unwrap();
        let action = vec![Perm::identity(7), m2.clone(), m2.then(&m2)];
        let (g, ea, eh) = semidirect_product(&a, &h, &action).unwrap();
        for hx in 0..3 {
            for ax in 0..7 {
                let conj = g.conj(ea.apply(ax), eh.apply(hx));
                assert_eq!(conj, ea.apply(action[hx].apply(ax)));
            }
        }
    }

    #[test]
    fn centralizer_normalizer_centre() {
        let s3 = sym3();
        assert_eq!(centre(&s3).order(), 1);
        let a3 = sylow_subgroup(&s3, 3).unwrap();
        assert_eq!(normalizer(&s3, &a3).order(), 6);
        let c2 = closure(&s3, &[1]).unwrap();
        assert_eq!(normalizer(&s3, &c2).order(), 2);
        assert_eq!(centralizer(&s3, &[3]).order(), 3);
    }

    #[test]
    fn agroup_detection() {
        assert!(is_agroup(&sym3()));
        assert!(is_agroup(&alt_group(5)));
        assert!(is_agroup(&cyclic_group(12)));
        assert!(!is_agroup(&sym_group(4))); // dihedral Sylow 2
        let (g, _, _) = direct_product(&sym_group(3), &alt_group(4));
        assert!(is_agroup(&g));
    }

    #[test]
    fn p_element_machinery() {
        let a4 = alt_group(4);
        let twos = p_elements(&a4, 2);
        assert_eq!(twos.len(), 4); // identity + three involutions
        let k = subgroup_generated_by_p_elements(&a4, 2);
        assert_eq!(k.order(), 4);
        let threes = subgroup_generated_by_p_elements(&a4, 3);
        assert_eq!(threes.order(), 12); // 3-elements generate all of Alt(4)
    }

    #[test]
    fn generating_set_is_small_and_generates() {
        for g in [sym_group(4), cyclic_group(36), alt_group(5)] {
            let gens = g.generating_set();
            assert!(gens.len() <= (g.order() as f64).log2().ceil() as usize + 1);
            let sub = closure(&g, &gens).unwrap();
            assert!(sub.is_whole(&g));
        }
    }

    #[test]
    fn relabeled_group_is_isomorphic_construction() {
        let g = sym3();
        let sigma = Perm::from_images(vec![0, 3, 2, 1, 5, 4]).unwrap();
        let h = g.relabeled(&sigma).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(
                    sigma.apply(g.mul(a, b)),
                    h.mul(sigma.apply(a), sigma.apply(b))
                );
            }
        }
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // non-latin row 1
        let t = vec![0, 1, 2, 1, 1, 0, 2, 0, 1];
        assert!(CayleyGroup::from_table(3, t, None).is_err());
        // row 0 not the identity
        let t = vec![1, 0, 0, 1];
        assert!(CayleyGroup::from_table(2, t, None).is_err());
        // valid C2
        let t = vec![0, 1, 1, 0];
        assert!(CayleyGroup::from_table(2, t, None).is_ok());
    }
}
