//! Structure of finite abelian groups given by Cayley tables: cyclic bases,
//! homocyclic decompositions, the matrix encoding of endomorphisms, and
//! linear algebra over Z/p^k.
//!
//! A basis is a list of generators of prime-power order whose cyclic spans
//! decompose the group; every element then has a unique exponent vector.
//! Endomorphisms become square matrices whose (r, c) entry is a coefficient
//! mod the order of generator c, subject to a divisibility constraint, with
//! row-vector action and left-to-right composition matching matrix product.

use crate::cayley::{gcd, p_part, prime_factors, CayleyGroup, Subgroup};
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::rc::Rc;

/// A cyclic basis of an abelian group: generators of prime-power order,
/// sorted by (prime, exponent), plus the coordinate bijection.
pub struct AbelianBasis {
    pub group: Rc<CayleyGroup>,
    pub gens: Vec<usize>,
    pub orders: Vec<u32>,
    /// element -> exponent vector
    coords: Vec<Vec<u32>>,
    /// mixed-radix rank of exponent vector -> element
    elem_of_rank: Vec<u32>,
    /// per-prime homocyclic block structure
    pub blocks: Vec<HomocyclicDecomp>,
}

/// Homocyclic components of the p-part: exponents strictly increasing,
/// each with its rank and the indices (into the basis) of its generators.
#[derive(Clone, Debug)]
pub struct HomocyclicDecomp {
    pub p: u32,
    /// exponent of component i is p^exps[i]; strictly increasing
    pub exps: Vec<u32>,
    pub idxs: Vec<Vec<usize>>,
}

impl HomocyclicDecomp {
    pub fn rank(&self, i: usize) -> usize {
        self.idxs[i].len()
    }

    pub fn components(&self) -> usize {
        self.exps.len()
    }
}

impl AbelianBasis {
    /// Extracts a basis by the greedy maximal-order method: per prime, pick
    /// an element of maximal order (lowest index breaking ties), split off a
    /// maximal complement, and recurse into the complement.
    pub fn new(group: Rc<CayleyGroup>) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let g = &*group;
        let n = g.order();
        let mut gens: Vec<usize> = Vec::new();
        let mut orders: Vec<u32> = Vec::new();
        for (p, _) in prime_factors(n as u64) {
            let p = p as u32;
            // the p-part subgroup: all elements of p-power order
            let elems: Vec<usize> = (0..n)
                .filter(|&x| {
                    let mut o = g.order_of(x);
                    while o % p as usize == 0 {
                        o /= p as usize;
                    }
                    o == 1
                })
                .collect();
            let mut part = crate::cayley::subgroup_from_elements(g, &elems);
            while part.order() > 1 {
                // element of maximal order, ties by index
                let mut best = 0usize;
                let mut best_ord = 1usize;
                for e in part.iter() {
                    let o = g.order_of(e);
                    if o > best_ord {
                        best_ord = o;
                        best = e;
                    }
                }
                gens.push(best);
                orders.push(best_ord as u32);
                let span = crate::cayley::closure(g, &[best])?;
                // maximal subgroup of `part` meeting <best> trivially
                let mut comp = Subgroup::trivial(g);
                for y in part.iter() {
                    if comp.contains(y) {
                        continue;
                    }
                    let cand = comp.extended(g, y);
                    let mut trivial_meet = true;
                    for s in span.iter() {
                        if s != 0 && cand.contains(s) {
                            trivial_meet = false;
                            break;
                        }
                    }
                    if trivial_meet {
                        comp = cand;
                    }
                }
                if comp.order() * span.order() != part.order() {
                    return Err(Error::Inconsistency(
                        "complement extraction failed in abelian basis".into(),
                    ));
                }
                part = comp;
            }
        }
        // sort generators by (prime, exponent), stable on extraction order
        let mut idx: Vec<usize> = (0..gens.len()).collect();
        idx.sort_by_key(|&i| {
            let o = orders[i] as u64;
            let p = prime_factors(o)[0].0;
            (p, o)
        });
        let gens: Vec<usize> = idx.iter().map(|&i| gens[i]).collect();
        let orders: Vec<u32> = idx.iter().map(|&i| orders[i]).collect();

        // coordinates by full mixed-radix enumeration
        let t = gens.len();
        let mut coords = vec![Vec::new(); n];
        let mut elem_of_rank = vec![u32::MAX; n];
        let mut exp = vec![0u32; t];
        let mut rank = 0usize;
        loop {
            let mut e = 0usize;
            for i in 0..t {
                e = g.mul(e, g.pow(gens[i], exp[i] as i64));
            }
            if !coords[e].is_empty() && t > 0 {
                return Err(Error::Inconsistency("coordinate map is not a bijection".into()));
            }
            coords[e] = exp.clone();
            elem_of_rank[rank] = e as u32;
            rank += 1;
            // increment mixed radix counter
            let mut i = 0;
            loop {
                if i == t {
                    break;
                }
                exp[i] += 1;
                if exp[i] < orders[i] {
                    break;
                }
                exp[i] = 0;
                i += 1;
            }
            if i == t {
                break;
            }
        }
        if rank != n {
            return Err(Error::Inconsistency("basis does not span the group".into()));
        }
        // empty coords only possible for the identity of the trivial group
        for (e, c) in coords.iter_mut().enumerate() {
            if c.is_empty() && t > 0 {
                return Err(Error::Inconsistency(format!("element {e} missed by basis")));
            }
        }

        // per-prime homocyclic blocks
        let mut blocks: Vec<HomocyclicDecomp> = Vec::new();
        for i in 0..t {
            let p = prime_factors(orders[i] as u64)[0].0 as u32;
            let e = orders[i].ilog(p);
            let blk = match blocks.iter_mut().find(|b| b.p == p) {
                Some(b) => b,
                None => {
                    blocks.push(HomocyclicDecomp { p, exps: Vec::new(), idxs: Vec::new() });
                    blocks.last_mut().unwrap()
                }
            };
            match blk.exps.iter().position(|&x| x == e) {
                Some(j) => blk.idxs[j].push(i),
                None => {
                    blk.exps.push(e);
                    blk.idxs.push(vec![i]);
                }
            }
        }
        Ok(AbelianBasis { group, gens, orders, coords, elem_of_rank, blocks })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn coords_of(&self, elem: usize) -> &[u32] {
        &self.coords[elem]
    }

    pub fn elem_of(&self, coords: &[u32]) -> usize {
        let mut rank = 0usize;
        let mut stride = 1usize;
        for i in 0..self.gens.len() {
            rank += (coords[i] % self.orders[i]) as usize * stride;
            stride *= self.orders[i] as usize;
        }
        self.elem_of_rank[rank] as usize
    }

    /// True iff all generator orders equal one prime.
    pub fn is_elementary(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].exps == vec![1]
    }

    /// The unique prime when the group is a p-group.
    pub fn single_prime(&self) -> Option<u32> {
        if self.blocks.len() == 1 {
            Some(self.blocks[0].p)
        } else {
            None
        }
    }

    /// The subgroup spanned by one homocyclic component.
    pub fn component_subgroup(&self, p: u32, comp: usize) -> Result<Subgroup> {
        let blk = self
            .blocks
            .iter()
            .find(|b| b.p == p)
            .ok_or_else(|| Error::Precondition(format!("no {p}-part")))?;
        let gens: Vec<usize> = blk.idxs[comp].iter().map(|&i| self.gens[i]).collect();
        crate::cayley::closure(&self.group, &gens)
    }
}

/// An endomorphism of an abelian group in basis coordinates: entry (r, c)
/// is the coefficient of generator c in the image of generator r, reduced
/// mod the order of generator c. Row vectors act on the right, so
/// composition left-to-right is the matrix product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EndoMatrix {
    pub t: usize,
    pub entries: Vec<u32>,
}

impl std::fmt::Debug for EndoMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EndoMatrix{:?}", self.entries.chunks(self.t.max(1)).collect::<Vec<_>>())
    }
}

impl EndoMatrix {
    pub fn identity(t: usize) -> Self {
        let mut entries = vec![0u32; t * t];
        for i in 0..t {
            entries[i * t + i] = 1;
        }
        EndoMatrix { t, entries }
    }

    pub fn zero(t: usize) -> Self {
        EndoMatrix { t, entries: vec![0; t * t] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.t + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.t + c] = v;
    }

    /// The divisibility a homomorphism between cyclic groups must satisfy:
    /// the (r, c) coefficient is a multiple of ord_c / gcd(ord_r, ord_c).
    pub fn is_legal(&self, basis: &AbelianBasis) -> bool {
        let t = self.t;
        for r in 0..t {
            for c in 0..t {
                let (or, oc) = (basis.orders[r] as usize, basis.orders[c] as usize);
                let d = oc / gcd(or, oc);
                let v = self.get(r, c) as usize;
                if v >= oc || v % d != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &EndoMatrix, basis: &AbelianBasis) -> EndoMatrix {
        let t = self.t;
        let mut out = EndoMatrix::zero(t);
        for r in 0..t {
            for c in 0..t {
                let mut acc = 0u64;
                for j in 0..t {
                    acc += self.get(r, j) as u64 * other.get(j, c) as u64;
                }
                out.set(r, c, (acc % basis.orders[c] as u64) as u32);
            }
        }
        out
    }

    pub fn add(&self, other: &EndoMatrix, basis: &AbelianBasis) -> EndoMatrix {
        let t = self.t;
        let mut out = EndoMatrix::zero(t);
        for r in 0..t {
            for c in 0..t {
                out.set(r, c, (self.get(r, c) + other.get(r, c)) % basis.orders[c]);
            }
        }
        out
    }

    pub fn scale(&self, k: u64, basis: &AbelianBasis) -> EndoMatrix {
        let t = self.t;
        let mut out = EndoMatrix::zero(t);
        for r in 0..t {
            for c in 0..t {
                out.set(r, c, ((self.get(r, c) as u64 * k) % basis.orders[c] as u64) as u32);
            }
        }
        out
    }

    /// Image of an element under the endomorphism.
    pub fn apply_elem(&self, basis: &AbelianBasis, elem: usize) -> usize {
        let x = basis.coords_of(elem);
        let t = self.t;
        let mut y = vec![0u32; t];
        for c in 0..t {
            let mut acc = 0u64;
            for r in 0..t {
                acc += x[r] as u64 * self.get(r, c) as u64;
            }
            y[c] = (acc % basis.orders[c] as u64) as u32;
        }
        basis.elem_of(&y)
    }

    /// The permutation of group elements (only meaningful for
    /// automorphisms; not injective otherwise).
    pub fn to_perm(&self, basis: &AbelianBasis) -> Result<Perm> {
        let n = basis.group.order();
        Perm::from_images((0..n).map(|e| self.apply_elem(basis, e)).collect())
    }

    /// Reads an endomorphism off its action on basis generators.
    pub fn from_images(basis: &AbelianBasis, gen_images: &[usize]) -> EndoMatrix {
        let t = basis.rank();
        let mut m = EndoMatrix::zero(t);
        for (r, &img) in gen_images.iter().enumerate() {
            let c = basis.coords_of(img);
            for j in 0..t {
                m.set(r, j, c[j]);
            }
        }
        m
    }

    /// Reads the matrix of a permutation known to be an endomorphism.
    pub fn from_perm(basis: &AbelianBasis, perm: &Perm) -> EndoMatrix {
        let images: Vec<usize> = basis.gens.iter().map(|&g| perm.apply(g)).collect();
        EndoMatrix::from_images(basis, &images)
    }

    /// Automorphism criterion: every homocyclic diagonal block is
    /// invertible mod p (equivalently, its determinant is prime to p).
    pub fn is_automorphism(&self, basis: &AbelianBasis) -> bool {
        for blk in &basis.blocks {
            for idxs in &blk.idxs {
                let m = PMat::from_submatrix(self, idxs, blk.p);
                if !m.is_invertible() {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse of an automorphism, via the element permutation.
    pub fn inverse(&self, basis: &AbelianBasis) -> Result<EndoMatrix> {
        let perm = self.to_perm(basis)?;
        Ok(EndoMatrix::from_perm(basis, &perm.inverse()))
    }

    /// Diagonal homocyclic blocks reduced mod p, for a p-group basis:
    /// the image of the reduction homomorphism onto the direct sum of
    /// matrix rings over F_p.
    pub fn lambda(&self, basis: &AbelianBasis) -> Result<Vec<PMat>> {
        let blk = basis
            .blocks
            .first()
            .ok_or_else(|| Error::Precondition("trivial group has no blocks".into()))?;
        if basis.blocks.len() != 1 {
            return Err(Error::Precondition("lambda needs a p-group".into()));
        }
        Ok(blk.idxs.iter().map(|idxs| PMat::from_submatrix(self, idxs, blk.p)).collect())
    }

    /// Additive order of the endomorphism.
    pub fn additive_order(&self, basis: &AbelianBasis) -> u64 {
        let mut m = 1u64;
        for r in 0..self.t {
            for c in 0..self.t {
                let v = self.get(r, c) as u64;
                if v != 0 {
                    let o = basis.orders[c] as u64;
                    let need = o / gcd(o as usize, v as usize) as u64;
                    m = m / gcd(m as usize, need as usize) as u64 * need;
                }
            }
        }
        m
    }
}

/// A dense matrix over the prime field F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMat {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u32>,
}

impl PMat {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        PMat { p, rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = PMat::zero(p, n, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.a[r * self.cols + c] = v % self.p;
    }

    fn from_submatrix(m: &EndoMatrix, idxs: &[usize], p: u32) -> PMat {
        let k = idxs.len();
        let mut out = PMat::zero(p, k, k);
        for (r, &ri) in idxs.iter().enumerate() {
            for (c, &ci) in idxs.iter().enumerate() {
                out.set(r, c, m.get(ri, ci) % p);
            }
        }
        out
    }

    pub fn mul(&self, other: &PMat) -> PMat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = PMat::zero(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc += self.get(r, j) as u64 * other.get(j, c) as u64;
                }
                out.a[r * other.cols + c] = (acc % self.p as u64) as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &PMat) -> PMat {
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = (*x + *y) % self.p;
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows).find(|&r| m.get(r, c) != 0);
            let Some(pr) = pivot else { continue };
            for j in 0..m.cols {
                let tmp = m.get(rank, j);
                m.set(rank, j, m.get(pr, j));
                m.set(pr, j, tmp);
            }
            let inv = mod_inverse(m.get(rank, c) as u64, m.p as u64).unwrap() as u32;
            for j in 0..m.cols {
                m.set(rank, j, ((m.get(rank, j) as u64 * inv as u64) % m.p as u64) as u32);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, c) != 0 {
                    let f = m.get(r, c) as u64;
                    for j in 0..m.cols {
                        let v = (m.get(r, j) as u64 + (m.p as u64 - f % m.p as u64) * m.get(rank, j) as u64)
                            % m.p as u64;
                        m.set(r, j, v as u32);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<PMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let p = self.p as u64;
        let mut m = self.clone();
        let mut inv = PMat::identity(self.p, n);
        for c in 0..n {
            let pivot = (c..n).find(|&r| m.get(r, c) != 0)?;
            for j in 0..n {
                let tmp = m.get(c, j);
                m.set(c, j, m.get(pivot, j));
                m.set(pivot, j, tmp);
                let tmp = inv.get(c, j);
                inv.set(c, j, inv.get(pivot, j));
                inv.set(pivot, j, tmp);
            }
            let f = mod_inverse(m.get(c, c) as u64, p)? as u64;
            for j in 0..n {
                m.set(c, j, ((m.get(c, j) as u64 * f) % p) as u32);
                inv.set(c, j, ((inv.get(c, j) as u64 * f) % p) as u32);
            }
            for r in 0..n {
                if r != c && m.get(r, c) != 0 {
                    let f = m.get(r, c) as u64;
                    for j in 0..n {
                        let v = (m.get(r, j) as u64 + (p - f) * m.get(c, j) as u64) % p;
                        m.set(r, j, v as u32);
                        let v = (inv.get(r, j) as u64 + (p - f) * inv.get(c, j) as u64) % p;
                        inv.set(r, j, v as u32);
                    }
                }
            }
        }
        Some(inv)
    }

    /// Row-reduced echelon form; canonical per row space.
    pub fn rref(&self) -> PMat {
        let mut m = self.clone();
        let p = m.p as u64;
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else { continue };
            for j in 0..m.cols {
                let tmp = m.get(rank, j);
                m.set(rank, j, m.get(pr, j));
                m.set(pr, j, tmp);
            }
            let f = mod_inverse(m.get(rank, c) as u64, p).unwrap();
            for j in 0..m.cols {
                m.set(rank, j, ((m.get(rank, j) as u64 * f) % p) as u32);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, c) != 0 {
                    let f = m.get(r, c) as u64;
                    for j in 0..m.cols {
                        let v = (m.get(r, j) as u64 + (p - f) * m.get(rank, j) as u64) % p;
                        m.set(r, j, v as u32);
                    }
                }
            }
            rank += 1;
        }
        m
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % m as i128 + m as i128) % m as i128) as u64)
}

/// All solutions of x * A = b over Z/p^k: a particular solution plus
/// generators of the homogeneous solution space. `a` has one row per
/// unknown; `b` has one entry per column of `a`. Returns None when the
/// system is inconsistent.
pub struct ModSolution {
    pub particular: Vec<u64>,
    pub gens: Vec<Vec<u64>>,
}

pub fn solve_mod_prime_power(
    a: &[Vec<u64>],
    b: &[u64],
    p: u64,
    k: u32,
) -> Option<ModSolution> {
    let q = p.pow(k);
    let r = a.len(); // unknowns
    let c = if r > 0 { a[0].len() } else { b.len() }; // equations
    // m: equations x unknowns (transpose of a), rhs alongside
    let mut m = vec![vec![0u64; r]; c];
    for i in 0..r {
        for j in 0..c {
            m[j][i] = a[i][j] % q;
        }
    }
    let mut rhs: Vec<u64> = b.iter().map(|&x| x % q).collect();
    // change of variables x = v * z, v starts as identity
    let mut v = vec![vec![0u64; r]; r];
    for i in 0..r {
        v[i][i] = 1;
    }
    let val = |x: u64| -> u32 {
        if x == 0 {
            return k;
        }
        let mut x = x;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    let npiv = r.min(c);
    let mut pivots: Vec<u32> = Vec::new(); // valuations of the pivots
    for i in 0..npiv {
        // minimal-valuation pivot in the remaining submatrix, lowest
        // (row, col) breaking ties
        let mut best: Option<(u32, usize, usize)> = None;
        for row in i..c {
            for col in i..r {
                if m[row][col] != 0 {
                    let w = val(m[row][col]);
                    if best.map(|(bw, _, _)| w < bw).unwrap_or(true) {
                        best = Some((w, row, col));
                    }
                }
            }
        }
        let Some((w, br, bc)) = best else { break };
        m.swap(i, br);
        rhs.swap(i, br);
        if bc != i {
            for row in m.iter_mut() {
                row.swap(i, bc);
            }
            // x = V z: a column swap on m is a column swap on V
            for row in v.iter_mut() {
                row.swap(i, bc);
            }
        }
        // normalize pivot to p^w
        let unit = m[i][i] / p.pow(w);
        let uinv = mod_inverse(unit, q).expect("unit part is invertible");
        for col in 0..r {
            m[i][col] = m[i][col] * uinv % q;
        }
        rhs[i] = rhs[i] * uinv % q;
        let piv = p.pow(w);
        debug_assert_eq!(m[i][i], piv);
        // clear the pivot column (row operations)
        for row in 0..c {
            if row != i && m[row][i] != 0 {
                debug_assert!(val(m[row][i]) >= w);
                let f = m[row][i] / piv;
                for col in 0..r {
                    m[row][col] = (m[row][col] + (q - f * m[i][col] % q)) % q;
                }
                rhs[row] = (rhs[row] + (q - f * rhs[i] % q)) % q;
            }
        }
        // clear the pivot row (column operations, tracked in v)
        for col in 0..r {
            if col != i && m[i][col] != 0 {
                debug_assert!(val(m[i][col]) >= w);
                let f = m[i][col] / piv;
                for row in 0..c {
                    m[row][col] = (m[row][col] + (q - f * m[row][i] % q)) % q;
                }
                for vi in 0..r {
                    // z_col' = z_col; x = v z with col_col -= f * col_i
                    // means v's column update: v[:, i] stays, adjust...
                    // working with v as rows-of-variables: x_vi = sum v[vi][zj] z_j
                    // substitute z_i -> z_i - f z_col is wrong direction;
                    // column op on m: col_col -= f col_i corresponds to
                    // z_i := z_i + f * z_col kept implicit; realized as
                    // v[:, col] += ... see below
                    let add = v[vi][i] * (q - f % q) % q;
                    v[vi][col] = (v[vi][col] + add) % q;
                }
            }
        }
        pivots.push(w);
    }
    // x = v * z? we tracked columns of m; variable vector z relates by the
    // same column operations applied to identity, columns of v expressing x
    // in terms of z: x_j = sum_i v[j][i] z_i. Solve diag * z = rhs.
    let mut z_part = vec![0u64; r];
    let mut free: Vec<(usize, u64)> = Vec::new(); // (variable index, step)
    for i in 0..r {
        if i < pivots.len() {
            let w = pivots[i];
            let piv = p.pow(w);
            if rhs.get(i).copied().unwrap_or(0) % piv != 0 {
                return None;
            }
            z_part[i] = (rhs[i] / piv) % q;
            if w > 0 {
                free.push((i, p.pow(k - w)));
            }
        } else {
            z_part[i] = 0;
            free.push((i, 1));
        }
    }
    // remaining equations must be trivial
    for i in pivots.len()..c {
        if m[i].iter().any(|&x| x != 0) {
            // shouldn't happen after full pivoting, but guard anyway
            return None;
        }
        if rhs[i] % q != 0 {
            return None;
        }
    }
    let apply_v = |z: &[u64]| -> Vec<u64> {
        (0..r)
            .map(|j| {
                let mut acc = 0u128;
                for i in 0..r {
                    acc += v[j][i] as u128 * z[i] as u128;
                }
                (acc % q as u128) as u64
            })
            .collect()
    };
    let particular = apply_v(&z_part);
    let gens: Vec<Vec<u64>> = free
        .into_iter()
        .map(|(i, step)| {
            let mut z = vec![0u64; r];
            z[i] = step % q;
            apply_v(&z)
        })
        .filter(|g| g.iter().any(|&x| x != 0))
        .collect();
    Some(ModSolution { particular, gens })
}

/// Generators of the full automorphism group of an abelian group, by
/// elementary matrices plus diagonal units: within each prime, all allowed
/// off-diagonal elementary endomorphisms 1 + d*E_rc together with diagonal
/// unit scalings generate every matrix with invertible homocyclic diagonal
/// blocks.
pub fn aut_abelian_generators(basis: &AbelianBasis) -> Vec<EndoMatrix> {
    let t = basis.rank();
    let mut out = Vec::new();
    for r in 0..t {
        for c in 0..t {
            if r == c {
                continue;
            }
            let (or, oc) = (basis.orders[r] as usize, basis.orders[c] as usize);
            if gcd(or, oc) == 1 {
                continue; // cross-prime entries are zero
            }
            let d = (oc / gcd(or, oc)) as u32;
            let mut m = EndoMatrix::identity(t);
            m.set(r, c, if d == 0 { 0 } else { d.max(1) });
            debug_assert!(m.is_legal(basis));
            out.push(m);
        }
    }
    for r in 0..t {
        for u in unit_group_generators(basis.orders[r] as u64) {
            let mut m = EndoMatrix::identity(t);
            m.set(r, r, u as u32);
            out.push(m);
        }
    }
    out
}

/// Generators of (Z/q)^x for a prime power q.
pub fn unit_group_generators(q: u64) -> Vec<u64> {
    if q <= 2 {
        return Vec::new();
    }
    let p = prime_factors(q)[0].0;
    if p == 2 {
        return if q == 4 { vec![3] } else { vec![q - 1, 5] };
    }
    // smallest primitive root mod p^k by direct order check
    let phi = q / p * (p - 1);
    'candidate: for g in 2..q {
        if g % p == 0 {
            continue;
        }
        // order of g divides phi; check maximality via prime divisors of phi
        for (f, _) in prime_factors(phi) {
            if pow_mod(g, phi / f, q) == 1 {
                continue 'candidate;
            }
        }
        return vec![g];
    }
    unreachable!("primitive root exists mod odd prime powers");
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc as u128 as u64;
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// The exponent of the p-part relevant utilities.
pub fn p_exponent(n: usize, p: u32) -> u32 {
    p_part(n, p).ilog(p as usize)
}
