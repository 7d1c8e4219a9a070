//! Packed bit vectors, dense GF(2) matrices and dense GF(2)[x] polynomials.
//!
//! These are the dense counterparts of the sparse structures in [`crate::ring`]:
//! decoder inner loops, dense oracles and ISD all run on word-packed bits.

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Fixed-length bit vector packed into `u64` words, LSB-first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0u64; words_for(len)],
        }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            assert!(i < len, "support index {i} out of range {len}");
            v.set(i, true);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, val: bool) {
        let w = &mut self.words[i / WORD_BITS];
        let mask = 1u64 << (i % WORD_BITS);
        if val {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b);
                w &= w - 1;
            }
        }
        out
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// `self ^= src << s` over plain (non-cyclic) bit positions; shifted-out
    /// bits are dropped, bits above `len` are masked away.
    fn xor_shl(&mut self, src: &Self, s: usize) {
        if s >= self.len {
            return;
        }
        let ws = s / WORD_BITS;
        let bs = s % WORD_BITS;
        let n = self.words.len();
        if bs == 0 {
            for i in 0..n.saturating_sub(ws) {
                self.words[i + ws] ^= src.words[i];
            }
        } else {
            for i in 0..n.saturating_sub(ws) {
                self.words[i + ws] ^= src.words[i] << bs;
                if i + ws + 1 < n {
                    self.words[i + ws + 1] ^= src.words[i] >> (WORD_BITS - bs);
                }
            }
        }
        self.mask_tail();
    }

    /// `self ^= src >> s` over plain bit positions.
    fn xor_shr(&mut self, src: &Self, s: usize) {
        if s >= self.len {
            return;
        }
        let ws = s / WORD_BITS;
        let bs = s % WORD_BITS;
        let n = self.words.len();
        if bs == 0 {
            for i in ws..n {
                self.words[i - ws] ^= src.words[i];
            }
        } else {
            for i in ws..n {
                self.words[i - ws] ^= src.words[i] >> bs;
                if i + 1 < n {
                    self.words[i - ws] ^= src.words[i + 1] << (WORD_BITS - bs);
                }
            }
        }
        self.mask_tail();
    }

    /// Cyclic accumulate: `self[j] ^= src[(j - s) mod len]` for all `j`,
    /// i.e. xor of `src` rotated upwards by `s` positions.
    pub fn xor_rot(&mut self, src: &Self, s: usize) {
        assert_eq!(self.len, src.len);
        let p = self.len;
        let s = s % p;
        if s == 0 {
            self.xor_assign(src);
            return;
        }
        self.xor_shl(src, s);
        self.xor_shr(src, p - s);
    }

    /// Cyclic rotation by `s`: `out[j] = self[(j - s) mod len]`.
    pub fn rotated(&self, s: usize) -> Self {
        let mut out = Self::zeros(self.len);
        out.xor_rot(self, s);
        out
    }
}

/// Dense GF(2) matrix with word-packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    pub rows: usize,
    pub cols: usize,
    row_words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let row_words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            row_words,
            data: vec![0u64; rows * row_words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.row_words + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, val: bool) {
        let w = &mut self.data[r * self.row_words + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if val {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        let mut v = BitVec::zeros(self.cols);
        v.words
            .copy_from_slice(&self.data[r * self.row_words..(r + 1) * self.row_words]);
        v
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len, self.cols);
        self.data[r * self.row_words..(r + 1) * self.row_words].copy_from_slice(&v.words);
    }

    pub fn xor_rows(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.row_words, source * self.row_words);
        for i in 0..self.row_words {
            let v = self.data[s + i];
            self.data[t + i] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.row_words {
            self.data.swap(a * self.row_words + i, b * self.row_words + i);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let base = r * self.row_words;
            for (wi, &w) in self.data[base..base + self.row_words].iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    out.set(wi * WORD_BITS + b, r, true);
                    w &= w - 1;
                }
            }
        }
        out
    }

    /// `self * other` over GF(2).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = BitVec::zeros(other.cols);
            let base = r * self.row_words;
            for (wi, &w) in self.data[base..base + self.row_words].iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    acc.xor_assign(&other.row(wi * WORD_BITS + b));
                    w &= w - 1;
                }
            }
            out.set_row(r, &acc);
        }
        out
    }

    /// `v * self` treating `v` as a row vector.
    pub fn mul_left(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len, self.rows);
        let mut acc = BitVec::zeros(self.cols);
        for i in v.support() {
            acc.xor_assign(&self.row(i));
        }
        acc
    }

    /// In-place row echelon form. Returns the pivot column of each pivot row.
    pub fn row_echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let mut pivot = None;
            for r in row..self.rows {
                if self.get(r, col) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon().len()
    }

    /// Basis of the right nullspace: vectors `v` with `self * v^T = 0`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.row_echelon();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (prow, &pcol) in pivots.iter().enumerate() {
                if m.get(prow, free) {
                    v.set(pcol, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Dense polynomial over GF(2), LSB-first coefficient packing.
///
/// Only what extended-Euclid inversion needs; ring arithmetic proper lives in
/// [`crate::ring`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero(capacity_bits: usize) -> Self {
        Gf2Poly {
            words: vec![0u64; words_for(capacity_bits.max(1))],
        }
    }

    pub fn from_support(support: &[usize], capacity_bits: usize) -> Self {
        let max = support.iter().copied().max().unwrap_or(0);
        let mut p = Self::zero(capacity_bits.max(max + 1));
        for &i in support {
            p.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
        }
        p
    }

    /// x^p + 1
    pub fn modulus(p: usize) -> Self {
        Self::from_support(&[0, p], p + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    /// `self ^= other << k`
    pub fn xor_shifted(&mut self, other: &Self, k: usize) {
        let ws = k / WORD_BITS;
        let bs = k % WORD_BITS;
        let needed = other.words.len() + ws + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        if bs == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= w;
            }
        } else {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= w << bs;
                self.words[i + ws + 1] ^= w >> (WORD_BITS - bs);
            }
        }
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Inverse of `a` modulo x^p + 1 via extended Euclid, if `gcd(a, x^p+1) = 1`.
    pub fn invert_mod_xp1(a: &Gf2Poly, p: usize) -> Option<Gf2Poly> {
        if a.is_zero() {
            return None;
        }
        let cap = p + 1;
        let mut r0 = Gf2Poly::modulus(p);
        let mut r1 = a.clone();
        let mut t0 = Gf2Poly::zero(cap);
        let mut t1 = Gf2Poly::from_support(&[0], cap);
        while !r1.is_zero() {
            let d1 = r1.degree().unwrap();
            while let Some(d0) = r0.degree() {
                if d0 < d1 {
                    break;
                }
                let shift = d0 - d1;
                r0.xor_shifted(&r1, shift);
                t0.xor_shifted(&t1, shift);
            }
            std::mem::swap(&mut r0, &mut r1);
            std::mem::swap(&mut t0, &mut t1);
        }
        // gcd in r0, Bezout coefficient in t0: t0 * a = r0 (mod x^p+1)
        if r0.degree() == Some(0) {
            Some(t0)
        } else {
            None
        }
    }
}
