//! Arithmetic in GF(2)[x]/(x^p+1) and block matrices over that ring.
//!
//! A p x p binary circulant matrix is identified with the polynomial whose
//! exponents are the support of its first row.  Keys and candidates are
//! sparse, so elements carry their support; decoder loops use the packed
//! [`BitVec`] form, and both multiplication paths must agree bit-exactly.

use crate::bits::{BitMatrix, BitVec, Gf2Poly};
use crate::error::{Error, Result};

/// Trial-division primality test; moduli stay far below 2^32.
pub fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3usize;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Sparse element of GF(2)[x]/(x^p+1): sorted distinct exponents in [0, p).
///
/// The modulus must be an odd prime; this rules out folding-style structure
/// in the quasi-cyclic codes built on top.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElement {
    p: usize,
    support: Vec<usize>,
}

impl RingElement {
    pub fn new(p: usize, mut support: Vec<usize>) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::InvalidParams(format!(
                "modulus {p} must be a prime >= 3"
            )));
        }
        support.sort_unstable();
        support.dedup();
        if let Some(&max) = support.last() {
            if max >= p {
                return Err(Error::InvalidParams(format!(
                    "exponent {max} not below modulus {p}"
                )));
            }
        }
        Ok(RingElement { p, support })
    }

    pub fn zero(p: usize) -> Self {
        RingElement::new(p, vec![]).expect("valid modulus")
    }

    pub fn one(p: usize) -> Self {
        RingElement::new(p, vec![0]).expect("valid modulus")
    }

    /// The monomial x^k.
    pub fn monomial(p: usize, k: usize) -> Self {
        RingElement::new(p, vec![k % p]).expect("valid modulus")
    }

    #[inline]
    pub fn modulus(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.support == [0]
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    /// GF(2) addition: symmetric difference of the supports.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut out = Vec::with_capacity(self.support.len() + other.support.len());
        let (mut i, mut j) = (0, 0);
        while i < self.support.len() && j < other.support.len() {
            match self.support[i].cmp(&other.support[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.support[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.support[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.support[i..]);
        out.extend_from_slice(&other.support[j..]);
        Ok(RingElement {
            p: self.p,
            support: out,
        })
    }

    /// Product modulo x^p + 1, by sparse shift-accumulate over a toggle array.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let p = self.p;
        let mut toggles = vec![false; p];
        for &i in &self.support {
            for &j in &other.support {
                let k = i + j;
                let k = if k >= p { k - p } else { k };
                toggles[k] = !toggles[k];
            }
        }
        let support = toggles
            .iter()
            .enumerate()
            .filter_map(|(k, &on)| on.then_some(k))
            .collect();
        Ok(RingElement { p, support })
    }

    /// Product by x^k.
    pub fn shifted(&self, k: usize) -> Self {
        let p = self.p;
        let k = k % p;
        let mut support: Vec<usize> = self
            .support
            .iter()
            .map(|&i| {
                let s = i + k;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        support.sort_unstable();
        RingElement { p, support }
    }

    /// Polynomial of the transposed circulant: exponents negated mod p.
    pub fn transpose(&self) -> Self {
        let p = self.p;
        let mut support: Vec<usize> = self
            .support
            .iter()
            .map(|&i| if i == 0 { 0 } else { p - i })
            .collect();
        support.sort_unstable();
        RingElement { p, support }
    }

    /// Inverse modulo x^p + 1 via extended Euclid.
    pub fn inverse(&self) -> Result<Self> {
        let dense = Gf2Poly::from_support(&self.support, self.p + 1);
        match Gf2Poly::invert_mod_xp1(&dense, self.p) {
            Some(inv) => RingElement::new(self.p, inv.support()),
            None => Err(Error::NotInvertible),
        }
    }

    pub fn is_invertible(&self) -> bool {
        let dense = Gf2Poly::from_support(&self.support, self.p + 1);
        Gf2Poly::invert_mod_xp1(&dense, self.p).is_some()
    }

    pub fn to_bits(&self) -> BitVec {
        BitVec::from_support(self.p, &self.support)
    }

    pub fn from_bits(bits: &BitVec) -> Result<Self> {
        RingElement::new(bits.len(), bits.support())
    }

    /// Dense-path product: rotate-and-xor the packed form of `other` once per
    /// support entry of `self`.  Must agree bit-exactly with [`Self::mul`].
    pub fn mul_dense(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let dense = other.to_bits();
        let mut acc = BitVec::zeros(self.p);
        for &k in &self.support {
            acc.xor_rot(&dense, k);
        }
        Self::from_bits(&acc)
    }

    /// Dense circulant expansion; row r is the first row cyclically shifted
    /// right by r, i.e. entry (r, c) = coefficient (c - r) mod p.
    pub fn to_circulant(&self) -> BitMatrix {
        let p = self.p;
        let mut m = BitMatrix::zeros(p, p);
        for r in 0..p {
            for &i in &self.support {
                let c = i + r;
                let c = if c >= p { c - p } else { c };
                m.set(r, c, true);
            }
        }
        m
    }

    /// Serialization: modulus line, then one support index per line.
    pub fn write_lines(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.p.to_string());
        for &i in &self.support {
            s.push('\n');
            s.push_str(&i.to_string());
        }
        s.push('\n');
        s
    }

    pub fn read_lines(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let p: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty ring element".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad modulus line".into()))?;
        let mut support = Vec::new();
        for line in lines {
            support.push(
                line.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad support index {line:?}")))?,
            );
        }
        RingElement::new(p, support)
    }
}

/// Grid of ring elements sharing one modulus; the block view of a
/// quasi-cyclic binary matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QcBlockMatrix {
    p: usize,
    rows: usize,
    cols: usize,
    blocks: Vec<RingElement>,
}

impl QcBlockMatrix {
    pub fn new(p: usize, rows: usize, cols: usize, blocks: Vec<RingElement>) -> Result<Self> {
        if blocks.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} grid needs {} blocks, got {}",
                rows * cols,
                blocks.len()
            )));
        }
        if blocks.iter().any(|b| b.modulus() != p) {
            return Err(Error::ShapeMismatch("blocks with mixed moduli".into()));
        }
        Ok(QcBlockMatrix {
            p,
            rows,
            cols,
            blocks,
        })
    }

    pub fn zero(p: usize, rows: usize, cols: usize) -> Self {
        let blocks = vec![RingElement::zero(p); rows * cols];
        QcBlockMatrix {
            p,
            rows,
            cols,
            blocks,
        }
    }

    pub fn identity(p: usize, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            *m.block_mut(i, i) = RingElement::one(p);
        }
        m
    }

    #[inline]
    pub fn modulus(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn block(&self, r: usize, c: usize) -> &RingElement {
        &self.blocks[r * self.cols + c]
    }

    #[inline]
    pub fn block_mut(&mut self, r: usize, c: usize) -> &mut RingElement {
        &mut self.blocks[r * self.cols + c]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.block(r, c).is_one()
                    } else {
                        self.block(r, c).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = RingElement::zero(self.p);
                for k in 0..self.cols {
                    acc = acc.add(&self.block(r, k).mul(other.block(k, c))?)?;
                }
                *out.block_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    /// Block transpose: block (i, j) of the result is block (j, i) transposed.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.block_mut(c, r) = self.block(r, c).transpose();
            }
        }
        out
    }

    /// Determinant of a square block matrix, as a ring element.
    ///
    /// In characteristic 2 the determinant equals the permanent, which allows
    /// a subset dynamic program over columns (n * 2^(n-1) ring products)
    /// instead of pivot-based elimination — the ring has zero divisors, so
    /// elimination could fail on matrices that are perfectly invertible.
    pub fn determinant(&self) -> Result<RingElement> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of non-square".into()));
        }
        let n = self.rows;
        let p = self.p;
        if n == 0 {
            return Ok(RingElement::one(p));
        }
        // dp[mask] = permanent of the submatrix on rows 0..k and column set
        // `mask`, where k = popcount(mask).
        let mut dp = vec![RingElement::zero(p); 1 << n];
        dp[0] = RingElement::one(p);
        for mask in 1usize..(1 << n) {
            let row = mask.count_ones() as usize - 1;
            let mut acc = RingElement::zero(p);
            let mut rest = mask;
            while rest != 0 {
                let col = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let sub = dp[mask & !(1 << col)].clone();
                if !sub.is_zero() && !self.block(row, col).is_zero() {
                    acc = acc.add(&sub.mul(self.block(row, col))?)?;
                }
            }
            dp[mask] = acc;
        }
        Ok(dp[(1 << n) - 1].clone())
    }

    /// True iff the determinant is a unit of the ring.
    pub fn is_invertible(&self) -> bool {
        match self.determinant() {
            Ok(det) => det.is_invertible(),
            Err(_) => false,
        }
    }

    /// Inverse over the ring via the adjugate: inv = det^-1 * adj, with
    /// adj(j, i) = determinant of the minor at (i, j) (no signs in char 2).
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let det_inv = self.determinant()?.inverse()?;
        let mut out = Self::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j)?;
                *out.block_mut(j, i) = minor.determinant()?.mul(&det_inv)?;
            }
        }
        Ok(out)
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> Result<Self> {
        let n = self.rows;
        let mut blocks = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == drop_row {
                continue;
            }
            for c in 0..n {
                if c == drop_col {
                    continue;
                }
                blocks.push(self.block(r, c).clone());
            }
        }
        QcBlockMatrix::new(self.p, n - 1, n - 1, blocks)
    }

    /// Dense binary expansion, each block as a p x p circulant.
    pub fn to_dense(&self) -> BitMatrix {
        let p = self.p;
        let mut m = BitMatrix::zeros(self.rows * p, self.cols * p);
        for br in 0..self.rows {
            for bc in 0..self.cols {
                for &i in self.block(br, bc).support() {
                    for r in 0..p {
                        let c = i + r;
                        let c = if c >= p { c - p } else { c };
                        m.set(br * p + r, bc * p + c, true);
                    }
                }
            }
        }
        m
    }
}
