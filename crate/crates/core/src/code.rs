//! System parameters, key generation, error sampling, encryption and the
//! key file format.
//!
//! The private code is a QC-LDPC code with parity-check H of n0 circulant
//! blocks of column weight dv, hidden behind a sparse quasi-cyclic
//! transformation Q whose block weights follow the circulant integer matrix
//! w(Q) built from the weight row mbar.  Setting all entries of mbar to zero
//! selects QC-MDPC mode, where Q is the identity and the public code is the
//! private one.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::ring::{is_prime, QcBlockMatrix, RingElement};
use rand::Rng;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SystemParams {
    /// Number of circulant blocks per row; code length is n0 * p.
    pub n0: usize,
    /// Circulant block size, a prime.
    pub p: usize,
    /// Column weight of each block of H (odd).
    pub dv: usize,
    /// First row of the circulant weight matrix w(Q); all zeros selects
    /// MDPC mode with Q = I.
    pub mbar: Vec<usize>,
    /// Weight of the intentional error vector.
    pub t: usize,
}

impl SystemParams {
    pub fn new(n0: usize, p: usize, dv: usize, mbar: Vec<usize>, t: usize) -> Result<Self> {
        let mbar = if mbar.is_empty() { vec![0; n0] } else { mbar };
        let params = SystemParams { n0, p, dv, mbar, t };
        params.validate()?;
        Ok(params)
    }

    /// QC-MDPC parameters (Q = identity).
    pub fn mdpc(n0: usize, p: usize, dv: usize, t: usize) -> Result<Self> {
        Self::new(n0, p, dv, vec![0; n0], t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n0 < 2 {
            return Err(Error::InvalidParams("n0 must be at least 2".into()));
        }
        if !is_prime(self.p) || self.p < 3 {
            return Err(Error::InvalidParams(format!(
                "p = {} must be a prime >= 3",
                self.p
            )));
        }
        if self.dv % 2 == 0 || self.dv == 0 || self.dv >= self.p {
            return Err(Error::InvalidParams(format!(
                "dv = {} must be odd and in (0, p)",
                self.dv
            )));
        }
        if self.t >= self.p {
            return Err(Error::InvalidParams(format!(
                "t = {} must be below p = {}",
                self.t, self.p
            )));
        }
        if self.mbar.len() != self.n0 {
            return Err(Error::InvalidParams(format!(
                "mbar has {} entries, expected n0 = {}",
                self.mbar.len(),
                self.n0
            )));
        }
        if !self.is_mdpc() {
            if self.mbar.iter().any(|&m| m == 0) {
                return Err(Error::InvalidParams(
                    "LDPC mode requires every block of Q to be non-null".into(),
                ));
            }
            let wq = build_weight_matrix(&self.mbar);
            if !wq.permanent_odd {
                return Err(Error::InvalidParams(format!(
                    "permanent of w(Q) is even ({}); Q would be singular",
                    wq.permanent
                )));
            }
            if self.m() * self.dv >= self.p {
                return Err(Error::InvalidParams(
                    "m * dv must stay below p for a sparse public block".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn is_mdpc(&self) -> bool {
        self.mbar.iter().all(|&m| m == 0)
    }

    /// Code length n = n0 * p.
    pub fn n(&self) -> usize {
        self.n0 * self.p
    }

    /// Code dimension k = (n0 - 1) * p.
    pub fn k(&self) -> usize {
        (self.n0 - 1) * self.p
    }

    /// Row/column weight of Q (1 in MDPC mode, where Q = I).
    pub fn m(&self) -> usize {
        if self.is_mdpc() {
            1
        } else {
            self.mbar.iter().sum()
        }
    }

    /// Compact single-line form used in file headers.
    pub fn summary(&self) -> String {
        format!(
            "n0={} p={} dv={} t={} mbar=[{}]",
            self.n0,
            self.p,
            self.dv,
            self.t,
            self.mbar
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Circulant integer weight matrix of Q with its permanent.
#[derive(Clone, Debug)]
pub struct WeightMatrix {
    pub matrix: Vec<Vec<usize>>,
    pub permanent: u128,
    pub permanent_odd: bool,
}

/// Builds w(Q) from its first row and computes the permanent by a subset
/// dynamic program (Ryser-style, n * 2^n terms).
pub fn build_weight_matrix(mbar: &[usize]) -> WeightMatrix {
    let n = mbar.len();
    let matrix: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| mbar[(j + n - i) % n]).collect())
        .collect();
    let mut dp = vec![0u128; 1 << n];
    dp[0] = 1;
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc: u128 = 0;
        let mut rest = mask;
        while rest != 0 {
            let col = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc += dp[mask & !(1 << col)] * matrix[row][col] as u128;
        }
        dp[mask] = acc;
    }
    let permanent = dp[(1 << n) - 1];
    WeightMatrix {
        matrix,
        permanent,
        permanent_odd: permanent % 2 == 1,
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrivateKey {
    pub params: SystemParams,
    /// The n0 circulant blocks of H, each of weight dv.
    pub h_blocks: Vec<RingElement>,
    /// The transformation matrix Q (identity in MDPC mode).
    pub q: QcBlockMatrix,
    /// Cached blocks of H~ = H * Q.
    htilde: Vec<RingElement>,
    /// Cached inverse-transpose of Q, needed to map the expanded error back
    /// (absent in MDPC mode).
    q_inv_t: Option<QcBlockMatrix>,
}

#[derive(Clone, Debug)]
pub struct PublicKey {
    pub params: SystemParams,
    /// The n0 - 1 polynomials of the non-systematic part of G'.
    pub g_polys: Vec<RingElement>,
    /// Dense form of the same polynomials, for encryption.
    g_dense: Vec<BitVec>,
}

impl PartialEq for PublicKey {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.g_polys == other.g_polys
    }
}

impl PublicKey {
    pub fn new(params: SystemParams, g_polys: Vec<RingElement>) -> Result<Self> {
        if g_polys.len() != params.n0 - 1 {
            return Err(Error::ShapeMismatch(format!(
                "public key needs {} polynomials, got {}",
                params.n0 - 1,
                g_polys.len()
            )));
        }
        let g_dense = g_polys.iter().map(|g| g.to_bits()).collect();
        Ok(PublicKey {
            params,
            g_polys,
            g_dense,
        })
    }

    pub fn g_dense(&self, i: usize) -> &BitVec {
        &self.g_dense[i]
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct KeyPair {
    pub private: PrivateKey,
    pub public: PublicKey,
}

impl PrivateKey {
    /// Rebuilds the cached products from (params, H, Q).
    fn assemble(
        params: SystemParams,
        h_blocks: Vec<RingElement>,
        q: QcBlockMatrix,
    ) -> Result<Self> {
        let n0 = params.n0;
        let mut htilde = Vec::with_capacity(n0);
        for i in 0..n0 {
            let mut acc = RingElement::zero(params.p);
            for j in 0..n0 {
                acc = acc.add(&h_blocks[j].mul(q.block(j, i))?)?;
            }
            htilde.push(acc);
        }
        let q_inv_t = if params.is_mdpc() {
            None
        } else {
            Some(q.inverse()?.transpose())
        };
        Ok(PrivateKey {
            params,
            h_blocks,
            q,
            htilde,
            q_inv_t,
        })
    }

    pub fn htilde(&self) -> &[RingElement] {
        &self.htilde
    }

    pub fn q_inv_t(&self) -> Option<&QcBlockMatrix> {
        self.q_inv_t.as_ref()
    }

    /// Derives the public key: g_i = ((H~_last)^-1 * H~_i)^T.
    pub fn public_key(&self) -> Result<PublicKey> {
        let n0 = self.params.n0;
        let inv = self.htilde[n0 - 1].inverse()?;
        let mut g = Vec::with_capacity(n0 - 1);
        for i in 0..n0 - 1 {
            g.push(inv.mul(&self.htilde[i])?.transpose());
        }
        PublicKey::new(self.params.clone(), g)
    }

    /// Fraction of ones lost to cancellations in H~ relative to the
    /// no-cancellation weight m * dv per block.
    pub fn cancellation_rate(&self) -> f64 {
        let expected = (self.params.m() * self.params.dv * self.params.n0) as f64;
        let actual: usize = self.htilde.iter().map(|h| h.weight()).sum();
        (expected - actual as f64) / expected
    }
}

fn sample_support<R: Rng>(p: usize, weight: usize, rng: &mut R) -> Vec<usize> {
    let mut support = rand::seq::index::sample(rng, p, weight).into_vec();
    support.sort_unstable();
    support
}

/// Generates a key pair.  H blocks are uniform among weight-dv supports and
/// Q blocks uniform among supports of the weight prescribed by w(Q);
/// generation retries until both Q and the last block of H~ are invertible.
pub fn keygen<R: Rng>(params: &SystemParams, rng: &mut R) -> Result<KeyPair> {
    params.validate()?;
    if params.dv > params.p {
        return Err(Error::InvalidParams("dv exceeds p".into()));
    }
    let n0 = params.n0;
    let p = params.p;
    let wq = build_weight_matrix(&params.mbar);
    const MAX_ATTEMPTS: usize = 200;
    for _ in 0..MAX_ATTEMPTS {
        let h_blocks: Vec<RingElement> = (0..n0)
            .map(|_| RingElement::new(p, sample_support(p, params.dv, rng)))
            .collect::<Result<_>>()?;
        let q = if params.is_mdpc() {
            QcBlockMatrix::identity(p, n0)
        } else {
            let mut blocks = Vec::with_capacity(n0 * n0);
            for row in 0..n0 {
                for col in 0..n0 {
                    let w = wq.matrix[row][col];
                    blocks.push(RingElement::new(p, sample_support(p, w, rng))?);
                }
            }
            QcBlockMatrix::new(p, n0, n0, blocks)?
        };
        if !params.is_mdpc() && !q.is_invertible() {
            continue;
        }
        let private = match PrivateKey::assemble(params.clone(), h_blocks, q) {
            Ok(sk) => sk,
            Err(Error::NotInvertible) => continue,
            Err(e) => return Err(e),
        };
        if !private.htilde[n0 - 1].is_invertible() {
            continue;
        }
        let public = private.public_key()?;
        return Ok(KeyPair { private, public });
    }
    Err(Error::InvalidParams(format!(
        "no invertible key found in {MAX_ATTEMPTS} attempts for {}",
        params.summary()
    )))
}

/// Uniform weight-t support over n positions; sorted, deterministic per rng.
pub fn sample_error<R: Rng>(n: usize, t: usize, rng: &mut R) -> Vec<usize> {
    assert!(t <= n, "error weight exceeds length");
    let mut support = rand::seq::index::sample(rng, n, t).into_vec();
    support.sort_unstable();
    support
}

/// Splits a length-n support into n0 per-block bit vectors of length p.
pub fn support_to_blocks(support: &[usize], n0: usize, p: usize) -> Vec<BitVec> {
    let mut blocks = vec![BitVec::zeros(p); n0];
    for &i in support {
        blocks[i / p].flip(i % p);
    }
    blocks
}

/// Ciphertext x = u * G' + e for a message of n0 - 1 blocks.
pub fn encrypt(u: &[BitVec], pk: &PublicKey, e_blocks: &[BitVec]) -> Result<Vec<BitVec>> {
    let n0 = pk.params.n0;
    let p = pk.params.p;
    if u.len() != n0 - 1 || u.iter().any(|b| b.len() != p) {
        return Err(Error::LengthMismatch {
            expected: n0 - 1,
            got: u.len(),
        });
    }
    if e_blocks.len() != n0 || e_blocks.iter().any(|b| b.len() != p) {
        return Err(Error::LengthMismatch {
            expected: n0,
            got: e_blocks.len(),
        });
    }
    let mut x = Vec::with_capacity(n0);
    let mut last = BitVec::zeros(p);
    for (i, ui) in u.iter().enumerate() {
        let mut xi = ui.clone();
        xi.xor_assign(&e_blocks[i]);
        x.push(xi);
        for k in ui.support() {
            last.xor_rot(pk.g_dense(i), k);
        }
    }
    last.xor_assign(&e_blocks[n0 - 1]);
    x.push(last);
    Ok(x)
}

/// Uniform random message of n0 - 1 blocks.
pub fn sample_message<R: Rng>(params: &SystemParams, rng: &mut R) -> Vec<BitVec> {
    (0..params.n0 - 1)
        .map(|_| {
            let mut b = BitVec::zeros(params.p);
            for i in 0..params.p {
                if rng.gen_bool(0.5) {
                    b.set(i, true);
                }
            }
            b
        })
        .collect()
}

fn support_line(tag: &str, e: &RingElement) -> String {
    let mut line = String::from(tag);
    line.push(':');
    for &i in e.support() {
        line.push(' ');
        line.push_str(&i.to_string());
    }
    line.push('\n');
    line
}

/// Text form of a private key: header `n0 p dv t`, `H i:` lines, then
/// `Q i j:` lines (omitted in MDPC mode).  Round-trips bit-exactly.
pub fn write_private_key(sk: &PrivateKey) -> String {
    let p = &sk.params;
    let mut out = format!("{} {} {} {}\n", p.n0, p.p, p.dv, p.t);
    for (i, h) in sk.h_blocks.iter().enumerate() {
        out.push_str(&support_line(&format!("H {i}"), h));
    }
    if !p.is_mdpc() {
        for i in 0..p.n0 {
            for j in 0..p.n0 {
                out.push_str(&support_line(&format!("Q {i} {j}"), sk.q.block(i, j)));
            }
        }
    }
    out
}

/// Text form of a public key: header plus `G i:` lines.
pub fn write_public_key(pk: &PublicKey) -> String {
    let p = &pk.params;
    let mut out = format!("{} {} {} {}\n", p.n0, p.p, p.dv, p.t);
    for (i, g) in pk.g_polys.iter().enumerate() {
        out.push_str(&support_line(&format!("G {i}"), g));
    }
    out
}

struct KeyFile {
    n0: usize,
    p: usize,
    dv: usize,
    t: usize,
    h: Vec<(usize, Vec<usize>)>,
    q: Vec<(usize, usize, Vec<usize>)>,
    g: Vec<(usize, Vec<usize>)>,
}

fn parse_key_file(text: &str) -> Result<KeyFile> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty key file".into()))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|f| f.parse().map_err(|_| Error::Parse(format!("bad header field {f:?}"))))
        .collect::<Result<_>>()?;
    if fields.len() != 4 {
        return Err(Error::Parse("header must be `n0 p dv t`".into()));
    }
    let mut file = KeyFile {
        n0: fields[0],
        p: fields[1],
        dv: fields[2],
        t: fields[3],
        h: vec![],
        q: vec![],
        g: vec![],
    };
    for line in lines {
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing colon in {line:?}")))?;
        let mut parts = head.split_whitespace();
        let kind = parts.next().ok_or_else(|| Error::Parse("empty line tag".into()))?;
        let idx: Vec<usize> = parts
            .map(|f| f.parse().map_err(|_| Error::Parse(format!("bad index {f:?}"))))
            .collect::<Result<_>>()?;
        let support: Vec<usize> = rest
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| Error::Parse(format!("bad support {f:?}"))))
            .collect::<Result<_>>()?;
        match (kind, idx.len()) {
            ("H", 1) => file.h.push((idx[0], support)),
            ("Q", 2) => file.q.push((idx[0], idx[1], support)),
            ("G", 1) => file.g.push((idx[0], support)),
            _ => return Err(Error::Parse(format!("unrecognised line {line:?}"))),
        }
    }
    Ok(file)
}

pub fn read_private_key(text: &str) -> Result<PrivateKey> {
    let file = parse_key_file(text)?;
    let n0 = file.n0;
    let p = file.p;
    if file.h.len() != n0 {
        return Err(Error::Parse(format!(
            "expected {} H blocks, found {}",
            n0,
            file.h.len()
        )));
    }
    let mut h_blocks = vec![RingElement::zero(p); n0];
    for (i, support) in file.h {
        if i >= n0 {
            return Err(Error::Parse(format!("H index {i} out of range")));
        }
        h_blocks[i] = RingElement::new(p, support)?;
    }
    let (q, mbar) = if file.q.is_empty() {
        (QcBlockMatrix::identity(p, n0), vec![0; n0])
    } else {
        if file.q.len() != n0 * n0 {
            return Err(Error::Parse(format!(
                "expected {} Q blocks, found {}",
                n0 * n0,
                file.q.len()
            )));
        }
        let mut blocks = vec![RingElement::zero(p); n0 * n0];
        for (i, j, support) in file.q {
            if i >= n0 || j >= n0 {
                return Err(Error::Parse(format!("Q index ({i},{j}) out of range")));
            }
            blocks[i * n0 + j] = RingElement::new(p, support)?;
        }
        let q = QcBlockMatrix::new(p, n0, n0, blocks)?;
        let mbar = (0..n0).map(|j| q.block(0, j).weight()).collect();
        (q, mbar)
    };
    let params = SystemParams::new(n0, p, file.dv, mbar, file.t)?;
    PrivateKey::assemble(params, h_blocks, q)
}

/// Reads a public key.  mbar is not representable in the file (it describes
/// Q, which the public side does not hold); pass it when the LDPC weight
/// profile is needed downstream, e.g. by the attack pipelines.
pub fn read_public_key(text: &str, mbar: Option<Vec<usize>>) -> Result<PublicKey> {
    let file = parse_key_file(text)?;
    let n0 = file.n0;
    if file.g.len() != n0 - 1 {
        return Err(Error::Parse(format!(
            "expected {} G polynomials, found {}",
            n0 - 1,
            file.g.len()
        )));
    }
    let mut g = vec![RingElement::zero(file.p); n0 - 1];
    for (i, support) in file.g {
        if i >= n0 - 1 {
            return Err(Error::Parse(format!("G index {i} out of range")));
        }
        g[i] = RingElement::new(file.p, support)?;
    }
    let params = SystemParams::new(n0, file.p, file.dv, mbar.unwrap_or_default(), file.t)?;
    PublicKey::new(params, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn toy_ldpc() -> SystemParams {
        SystemParams::new(2, 101, 5, vec![1, 2], 4).unwrap()
    }

    #[test]
    fn weight_matrix_small_permanents() {
        let w = build_weight_matrix(&[2, 3]);
        assert_eq!(w.permanent, 13); // ad + bc = 2*2 + 3*3
        assert!(w.permanent_odd);
        let w = build_weight_matrix(&[1, 1]);
        assert_eq!(w.permanent, 2);
        assert!(!w.permanent_odd);
    }

    #[test]
    fn weight_matrix_permanent_matches_bruteforce() {
        // exhaustive permanent over all 5! permutations
        let mbar = [3usize, 3, 2, 2, 1];
        let w = build_weight_matrix(&mbar);
        let n = mbar.len();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut total: u128 = 0;
        // Heap's algorithm
        fn permute(k: usize, idx: &mut Vec<usize>, m: &[Vec<usize>], total: &mut u128) {
            if k == 1 {
                let prod: u128 = idx.iter().enumerate().map(|(r, &c)| m[r][c] as u128).product();
                *total += prod;
                return;
            }
            for i in 0..k {
                permute(k - 1, idx, m, total);
                if k % 2 == 0 {
                    idx.swap(i, k - 1);
                } else {
                    idx.swap(0, k - 1);
                }
            }
        }
        permute(n, &mut idx, &w.matrix, &mut total);
        assert_eq!(w.permanent, total);
        assert_eq!(w.permanent_odd, total % 2 == 1);
    }

    #[test]
    fn params_reject_even_permanent() {
        assert!(SystemParams::new(2, 101, 5, vec![1, 1], 4).is_err());
        assert!(SystemParams::new(2, 101, 5, vec![1, 2], 4).is_ok());
    }

    #[test]
    fn mdpc_mode_uses_identity_q() {
        let params = SystemParams::mdpc(2, 101, 5, 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(30);
        let kp = keygen(&params, &mut rng).unwrap();
        assert!(kp.private.q.is_identity());
        assert_eq!(kp.private.htilde(), &kp.private.h_blocks[..]);
        assert!(kp.private.q_inv_t().is_none());
    }

    #[test]
    fn fig1_scale_parameters_accepted() {
        let params = SystemParams::new(2, 4801, 9, vec![2, 3], 95).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let kp = keygen(&params, &mut rng).unwrap();
        assert_eq!(kp.public.g_polys.len(), 1);
        for (i, h) in kp.private.h_blocks.iter().enumerate() {
            assert_eq!(h.weight(), 9, "block {i}");
        }
        // parity-check identity: transpose(h~_i) + g_i * transpose(h~_last) = 0
        let last_t = kp.private.htilde()[1].transpose();
        let lhs = kp.private.htilde()[0]
            .transpose()
            .add(&kp.public.g_polys[0].mul(&last_t).unwrap())
            .unwrap();
        assert!(lhs.is_zero());
    }

    #[test]
    fn keygen_is_deterministic() {
        let params = toy_ldpc();
        let a = keygen(&params, &mut ChaCha12Rng::seed_from_u64(32)).unwrap();
        let b = keygen(&params, &mut ChaCha12Rng::seed_from_u64(32)).unwrap();
        let c = keygen(&params, &mut ChaCha12Rng::seed_from_u64(33)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.private, c.private);
    }

    #[test]
    fn htilde_weight_bounded_by_m_dv() {
        let params = toy_ldpc();
        let mut rng = ChaCha12Rng::seed_from_u64(34);
        let mut cancellations = 0usize;
        for _ in 0..10 {
            let kp = keygen(&params, &mut rng).unwrap();
            let bound = params.m() * params.dv;
            for (i, ht) in kp.private.htilde().iter().enumerate() {
                assert!(ht.weight() <= bound, "block {i} weight {}", ht.weight());
                if ht.weight() < bound {
                    cancellations += 1;
                }
            }
        }
        println!("blocks with cancellations: {cancellations}/20");
    }

    #[test]
    fn q_blocks_follow_weight_matrix() {
        let params = toy_ldpc();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(35)).unwrap();
        let wq = build_weight_matrix(&params.mbar);
        for i in 0..params.n0 {
            for j in 0..params.n0 {
                assert_eq!(kp.private.q.block(i, j).weight(), wq.matrix[i][j]);
            }
        }
    }

    #[test]
    fn sample_error_basics() {
        let mut rng = ChaCha12Rng::seed_from_u64(36);
        assert!(sample_error(100, 0, &mut rng).is_empty());
        for _ in 0..50 {
            let e = sample_error(202, 7, &mut rng);
            assert_eq!(e.len(), 7);
            assert!(e.windows(2).all(|w| w[0] < w[1]));
            assert!(e.iter().all(|&i| i < 202));
        }
    }

    #[test]
    fn sample_error_marginals_are_uniform() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let (n, t, draws) = (50usize, 5usize, 100_000usize);
        let mut counts = vec![0u32; n];
        for _ in 0..draws {
            for i in sample_error(n, t, &mut rng) {
                counts[i] += 1;
            }
        }
        let expect = draws as f64 * t as f64 / n as f64;
        let sigma = (draws as f64 * (t as f64 / n as f64) * (1.0 - t as f64 / n as f64)).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - expect).abs() < 5.0 * sigma,
                "position {i}: {c} vs {expect}"
            );
        }
    }

    #[test]
    fn encrypt_zero_message_zero_error_is_zero() {
        let params = toy_ldpc();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(38)).unwrap();
        let u = vec![BitVec::zeros(params.p); params.n0 - 1];
        let e = vec![BitVec::zeros(params.p); params.n0];
        let x = encrypt(&u, &kp.public, &e).unwrap();
        assert!(x.iter().all(|b| b.is_zero()));
    }

    #[test]
    fn error_recoverable_from_ciphertext() {
        let params = toy_ldpc();
        let mut rng = ChaCha12Rng::seed_from_u64(39);
        let kp = keygen(&params, &mut rng).unwrap();
        for _ in 0..20 {
            let u = sample_message(&params, &mut rng);
            let e = support_to_blocks(
                &sample_error(params.n(), params.t, &mut rng),
                params.n0,
                params.p,
            );
            let x = encrypt(&u, &kp.public, &e).unwrap();
            // x + uG' = e
            let codeword = encrypt(&u, &kp.public, &vec![BitVec::zeros(params.p); params.n0])
                .unwrap();
            for i in 0..params.n0 {
                let mut diff = x[i].clone();
                diff.xor_assign(&codeword[i]);
                assert_eq!(diff, e[i]);
            }
        }
    }

    #[test]
    fn private_key_file_roundtrip() {
        for params in [toy_ldpc(), SystemParams::mdpc(3, 53, 5, 4).unwrap()] {
            let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(40)).unwrap();
            let text = write_private_key(&kp.private);
            if params.is_mdpc() {
                assert!(!text.contains("Q "));
            }
            let back = read_private_key(&text).unwrap();
            assert_eq!(back, kp.private);
            assert_eq!(write_private_key(&back), text);
        }
    }

    #[test]
    fn public_key_file_roundtrip() {
        let params = toy_ldpc();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(41)).unwrap();
        let text = write_public_key(&kp.public);
        let back = read_public_key(&text, Some(params.mbar.clone())).unwrap();
        assert_eq!(back.g_polys, kp.public.g_polys);
        assert_eq!(back.params, kp.public.params);
        assert_eq!(write_public_key(&back), text);
    }
}
