//! Syndrome computation, bit-flipping decoders and decryption.
//!
//! Three decoder flavors are supported:
//!
//! * `BfPrivate` — Gallager bit flipping on the private parity check H,
//!   estimating the expanded error e' = e * Q^T; the recovered e' is mapped
//!   back through Q^-T during decryption.
//! * `QDecoder` — correlation decoding: unsatisfied-check counts through H
//!   are combined with the integer product by Q, estimating e directly.
//! * `BfHtilde` — bit flipping on H~ = H * Q, also estimating e directly.
//!
//! In MDPC mode (Q = I) all three coincide.

use crate::bits::BitVec;
use crate::code::{KeyPair, PrivateKey};
use crate::error::{Error, Result};
use crate::par;
use crate::ring::RingElement;
use crate::stats::wilson_interval;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DecoderFlavor {
    /// Bit flipping on the private code (recovers the expanded error).
    BfPrivate,
    /// Correlation decoder using H and Q separately.
    QDecoder,
    /// Bit flipping on the public-equivalent parity check H~.
    BfHtilde,
}

impl DecoderFlavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bf-private" => Ok(DecoderFlavor::BfPrivate),
            "q-decoder" => Ok(DecoderFlavor::QDecoder),
            "bf-htilde" => Ok(DecoderFlavor::BfHtilde),
            _ => Err(Error::Parse(format!(
                "unknown decoder {s:?} (expected bf-private|q-decoder|bf-htilde)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DecoderFlavor::BfPrivate => "bf-private",
            DecoderFlavor::QDecoder => "q-decoder",
            DecoderFlavor::BfHtilde => "bf-htilde",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ThresholdRule {
    /// Flip every position whose counter reaches the iteration maximum.
    MaxCounter,
    /// Flip positions with counter >= the per-iteration threshold; the last
    /// entry repeats for any further iterations.
    Fixed(Vec<u32>),
}

/// Cap on the number of flips per Q-decoder iteration.  Each flip of e moves
/// m positions of e', so the default limits one iteration to the row weight
/// of Q.  Ignored in MDPC mode, where the Q-decoder must match plain BF.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlipCap {
    RowWeight,
    Unlimited,
    Limit(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecoderConfig {
    pub flavor: DecoderFlavor,
    pub max_iterations: usize,
    pub threshold_rule: ThresholdRule,
    pub flip_cap: FlipCap,
}

impl DecoderConfig {
    pub fn new(flavor: DecoderFlavor) -> Self {
        DecoderConfig {
            flavor,
            max_iterations: 20,
            threshold_rule: ThresholdRule::MaxCounter,
            flip_cap: FlipCap::RowWeight,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecodeOutcome {
    /// Recovered error blocks; absent on failure.  For `BfPrivate` this is
    /// the expanded error e', otherwise e itself.
    pub recovered_error: Option<Vec<BitVec>>,
    /// True iff the syndrome was annihilated within the iteration budget.
    pub success: bool,
    pub iterations_used: usize,
}

/// Syndrome s = x * Q^T * H^T = x * H~^T, one block of length p.
pub fn syndrome(x: &[BitVec], sk: &PrivateKey) -> Result<BitVec> {
    let p = sk.params.p;
    if x.len() != sk.params.n0 || x.iter().any(|b| b.len() != p) {
        return Err(Error::LengthMismatch {
            expected: sk.params.n0,
            got: x.len(),
        });
    }
    Ok(syndrome_of(x, sk.htilde()))
}

/// Syndrome of error blocks against arbitrary parity blocks:
/// s = sum_c err_c(x) * blocks_c(1/x).
pub fn syndrome_of(err: &[BitVec], blocks: &[RingElement]) -> BitVec {
    let p = blocks[0].modulus();
    let mut s = BitVec::zeros(p);
    for (c, block) in blocks.iter().enumerate() {
        for &k in block.support() {
            s.xor_rot(&err[c], if k == 0 { 0 } else { p - k });
        }
    }
    s
}

/// Unsatisfied-check counters: counters[c*p + j] counts syndrome ones hit by
/// column j of block c.
fn counters(s_ones: &[usize], blocks: &[RingElement], p: usize, out: &mut [u32]) {
    out.iter_mut().for_each(|c| *c = 0);
    for (c, block) in blocks.iter().enumerate() {
        let base = c * p;
        for &i in s_ones {
            for &k in block.support() {
                let j = i + k;
                let j = if j >= p { j - p } else { j };
                out[base + j] += 1;
            }
        }
    }
}

fn threshold_for(rule: &ThresholdRule, iter: usize, max_counter: u32) -> u32 {
    match rule {
        ThresholdRule::MaxCounter => max_counter,
        ThresholdRule::Fixed(list) => {
            let idx = iter.min(list.len().saturating_sub(1));
            list[idx]
        }
    }
}

/// Gallager bit flipping against the given parity blocks.  The error
/// estimate lives in the code domain of `blocks` (length n0 * p).
pub fn bf_decode(s: &BitVec, blocks: &[RingElement], cfg: &DecoderConfig) -> DecodeOutcome {
    let p = blocks[0].modulus();
    let n0 = blocks.len();
    let transposed: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.transpose().support().to_vec())
        .collect();
    let mut s_res = s.clone();
    let mut e_hat = vec![BitVec::zeros(p); n0];
    let mut cnt = vec![0u32; n0 * p];
    let mut iterations = 0;
    for iter in 0..cfg.max_iterations {
        if s_res.is_zero() {
            break;
        }
        iterations = iter + 1;
        let ones = s_res.support();
        counters(&ones, blocks, p, &mut cnt);
        let max = *cnt.iter().max().unwrap_or(&0);
        if max == 0 {
            break;
        }
        let th = threshold_for(&cfg.threshold_rule, iter, max).max(1);
        let mut flipped = false;
        for c in 0..n0 {
            for j in 0..p {
                if cnt[c * p + j] >= th {
                    e_hat[c].flip(j);
                    for &k in &transposed[c] {
                        let b = j + k;
                        s_res.flip(if b >= p { b - p } else { b });
                    }
                    flipped = true;
                }
            }
        }
        if !flipped {
            break; // threshold too high to make progress
        }
    }
    finish(s, s_res, e_hat, blocks, iterations)
}

fn finish(
    s_orig: &BitVec,
    s_res: BitVec,
    e_hat: Vec<BitVec>,
    blocks: &[RingElement],
    iterations: usize,
) -> DecodeOutcome {
    let success = s_res.is_zero();
    if success {
        debug_assert_eq!(
            &syndrome_of(&e_hat, blocks),
            s_orig,
            "recovered error does not reproduce the syndrome"
        );
    }
    DecodeOutcome {
        recovered_error: success.then_some(e_hat),
        success,
        iterations_used: iterations,
    }
}

/// Correlation decoder: counters through H are combined with the integer
/// product by Q, and flips are applied to the estimate of e itself.
pub fn q_decode(s: &BitVec, sk: &PrivateKey, cfg: &DecoderConfig) -> DecodeOutcome {
    let p = sk.params.p;
    let n0 = sk.params.n0;
    let htilde_t: Vec<Vec<usize>> = sk
        .htilde()
        .iter()
        .map(|b| b.transpose().support().to_vec())
        .collect();
    let cap = if sk.params.is_mdpc() {
        usize::MAX
    } else {
        match cfg.flip_cap {
            FlipCap::RowWeight => sk.params.m(),
            FlipCap::Unlimited => usize::MAX,
            FlipCap::Limit(k) => k.max(1),
        }
    };
    let mut s_res = s.clone();
    let mut e_hat = vec![BitVec::zeros(p); n0];
    let mut sigma = vec![0u32; n0 * p];
    let mut corr = vec![0u32; n0 * p];
    let mut iterations = 0;
    for iter in 0..cfg.max_iterations {
        if s_res.is_zero() {
            break;
        }
        iterations = iter + 1;
        let ones = s_res.support();
        counters(&ones, &sk.h_blocks, p, &mut sigma);
        // corr[c*p + j] = sum_r sum_{k in supp q[r][c]} sigma[r*p + (j-k) mod p]
        corr.iter_mut().for_each(|c| *c = 0);
        for r in 0..n0 {
            for c in 0..n0 {
                for &k in sk.q.block(r, c).support() {
                    let (head, tail) = sigma[r * p..(r + 1) * p].split_at(p - k);
                    let base = c * p;
                    for (i, &v) in tail.iter().enumerate() {
                        corr[base + i] += v;
                    }
                    for (i, &v) in head.iter().enumerate() {
                        corr[base + k + i] += v;
                    }
                }
            }
        }
        let max = *corr.iter().max().unwrap_or(&0);
        if max == 0 {
            break;
        }
        let th = threshold_for(&cfg.threshold_rule, iter, max).max(1);
        let mut flips = 0usize;
        for c in 0..n0 {
            if flips >= cap {
                break;
            }
            for j in 0..p {
                if corr[c * p + j] >= th {
                    e_hat[c].flip(j);
                    for &k in &htilde_t[c] {
                        let b = j + k;
                        s_res.flip(if b >= p { b - p } else { b });
                    }
                    flips += 1;
                    if flips >= cap {
                        break;
                    }
                }
            }
        }
        if flips == 0 {
            break;
        }
    }
    finish(s, s_res, e_hat, sk.htilde(), iterations)
}

/// Runs the configured decoder on a ciphertext and returns the estimate of
/// the encryption error e (not the expanded error), or None on failure.
pub fn recover_error(x: &[BitVec], sk: &PrivateKey, cfg: &DecoderConfig) -> Result<Option<Vec<BitVec>>> {
    let s = syndrome(x, sk)?;
    let outcome = match cfg.flavor {
        DecoderFlavor::BfPrivate => bf_decode(&s, &sk.h_blocks, cfg),
        DecoderFlavor::QDecoder => q_decode(&s, sk, cfg),
        DecoderFlavor::BfHtilde => bf_decode(&s, sk.htilde(), cfg),
    };
    if !outcome.success {
        return Ok(None);
    }
    let err = outcome.recovered_error.expect("success carries the error");
    if cfg.flavor != DecoderFlavor::BfPrivate {
        return Ok(Some(err));
    }
    // map the expanded error back: e = e' * Q^-T
    match sk.q_inv_t() {
        None => Ok(Some(err)), // MDPC: Q = I
        Some(qinvt) => {
            let p = sk.params.p;
            let n0 = sk.params.n0;
            let dense: Vec<BitVec> = (0..n0 * n0)
                .map(|i| qinvt.block(i / n0, i % n0).to_bits())
                .collect();
            let mut e = vec![BitVec::zeros(p); n0];
            for r in 0..n0 {
                for i in err[r].support() {
                    for (c, e_c) in e.iter_mut().enumerate() {
                        e_c.xor_rot(&dense[r * n0 + c], i);
                    }
                }
            }
            Ok(Some(e))
        }
    }
}

/// Decrypts a ciphertext; the message is the first k bits of x + e.
pub fn decrypt(x: &[BitVec], sk: &PrivateKey, cfg: &DecoderConfig) -> Result<Vec<BitVec>> {
    match recover_error(x, sk, cfg)? {
        None => Err(Error::DecodingFailure),
        Some(e) => {
            let n0 = sk.params.n0;
            let mut u = Vec::with_capacity(n0 - 1);
            for i in 0..n0 - 1 {
                let mut ui = x[i].clone();
                ui.xor_assign(&e[i]);
                u.push(ui);
            }
            Ok(u)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct DfrEstimate {
    pub t: usize,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl DfrEstimate {
    pub fn csv_header() -> &'static str {
        "t,trials,failures,rate,ci_low,ci_high"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.6e},{:.6e},{:.6e}",
            self.t, self.trials, self.failures, self.rate, self.ci_low, self.ci_high
        )
    }
}

/// Decoding failure rate over fresh (message, error) pairs on a fixed key,
/// with a 95% Wilson interval.  Deterministic per seed and invariant to the
/// worker count.
pub fn estimate_dfr(
    kp: &KeyPair,
    cfg: &DecoderConfig,
    t: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> DfrEstimate {
    let params = &kp.private.params;
    let failures: u64 = par::parallel_trials(seed, 0, trials, workers, || 0u64, |_, rng, acc| {
        let u = crate::code::sample_message(params, rng);
        let e = crate::code::support_to_blocks(
            &crate::code::sample_error(params.n(), t, rng),
            params.n0,
            params.p,
        );
        let x = crate::code::encrypt(&u, &kp.public, &e).expect("well-formed inputs");
        if decrypt(&x, &kp.private, cfg).is_err() {
            *acc += 1;
        }
    })
    .into_iter()
    .sum();
    let rate = failures as f64 / trials.max(1) as f64;
    let (ci_low, ci_high) = wilson_interval(failures, trials, 1.96);
    DfrEstimate {
        t,
        trials,
        failures,
        rate,
        ci_low,
        ci_high,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{encrypt, keygen, sample_error, sample_message, support_to_blocks, SystemParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn mdpc_params() -> SystemParams {
        SystemParams::mdpc(2, 389, 13, 20).unwrap()
    }

    #[test]
    fn codeword_has_zero_syndrome() {
        let params = SystemParams::new(2, 101, 5, vec![1, 2], 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(50);
        let kp = keygen(&params, &mut rng).unwrap();
        for _ in 0..100 {
            let u = sample_message(&params, &mut rng);
            let zero_e = vec![BitVec::zeros(params.p); params.n0];
            let x = encrypt(&u, &kp.public, &zero_e).unwrap();
            assert!(syndrome(&x, &kp.private).unwrap().is_zero());
        }
    }

    #[test]
    fn syndrome_of_unit_error_is_htilde_column() {
        let params = SystemParams::new(2, 101, 5, vec![1, 2], 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(51);
        let kp = keygen(&params, &mut rng).unwrap();
        let dense = crate::ring::QcBlockMatrix::new(
            params.p,
            1,
            params.n0,
            kp.private.htilde().to_vec(),
        )
        .unwrap()
        .to_dense();
        for &j in &[0usize, 1, 57, 100, 101, 150, 201] {
            let e = support_to_blocks(&[j], params.n0, params.p);
            let s = syndrome(&e, &kp.private).unwrap();
            for r in 0..params.p {
                assert_eq!(s.get(r), dense.get(r, j), "row {r}, col {j}");
            }
        }
    }

    #[test]
    fn syndrome_matches_dense_oracle() {
        let params = SystemParams::new(2, 101, 5, vec![1, 2], 6).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(52);
        let kp = keygen(&params, &mut rng).unwrap();
        let htilde_dense = crate::ring::QcBlockMatrix::new(
            params.p,
            1,
            params.n0,
            kp.private.htilde().to_vec(),
        )
        .unwrap()
        .to_dense()
        .transpose();
        for _ in 0..50 {
            let u = sample_message(&params, &mut rng);
            let e = support_to_blocks(&sample_error(params.n(), params.t, &mut rng), params.n0, params.p);
            let x = encrypt(&u, &kp.public, &e).unwrap();
            let mut flat = BitVec::zeros(params.n());
            for (b, blk) in x.iter().enumerate() {
                for i in blk.support() {
                    flat.set(b * params.p + i, true);
                }
            }
            let expect = htilde_dense.mul_left(&flat);
            let got = syndrome(&x, &kp.private).unwrap();
            assert_eq!(got.support(), expect.support());
        }
    }

    #[test]
    fn zero_syndrome_decodes_immediately() {
        let params = mdpc_params();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(53)).unwrap();
        let cfg = DecoderConfig::new(DecoderFlavor::BfPrivate);
        let out = bf_decode(&BitVec::zeros(params.p), &kp.private.h_blocks, &cfg);
        assert!(out.success);
        assert_eq!(out.iterations_used, 0);
        assert!(out.recovered_error.unwrap().iter().all(|b| b.is_zero()));
        let qout = q_decode(&BitVec::zeros(params.p), &kp.private, &cfg);
        assert!(qout.success);
        assert_eq!(qout.iterations_used, 0);
    }

    #[test]
    fn single_errors_always_corrected() {
        let params = mdpc_params();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(54)).unwrap();
        let cfg = DecoderConfig::new(DecoderFlavor::BfPrivate);
        let mut rng = ChaCha12Rng::seed_from_u64(55);
        for _ in 0..100 {
            let j = rand::Rng::gen_range(&mut rng, 0..params.n());
            let e = support_to_blocks(&[j], params.n0, params.p);
            let s = syndrome_of(&e, &kp.private.h_blocks);
            let out = bf_decode(&s, &kp.private.h_blocks, &cfg);
            assert!(out.success, "single error at {j} not corrected");
            assert_eq!(out.recovered_error.unwrap(), e);
        }
    }

    #[test]
    fn mdpc_q_decode_equals_bf_decode() {
        let params = mdpc_params();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(56)).unwrap();
        let cfg = DecoderConfig::new(DecoderFlavor::QDecoder);
        let mut rng = ChaCha12Rng::seed_from_u64(57);
        for _ in 0..100 {
            let e = support_to_blocks(&sample_error(params.n(), params.t, &mut rng), params.n0, params.p);
            let s = syndrome_of(&e, &kp.private.h_blocks);
            let bf = bf_decode(&s, &kp.private.h_blocks, &cfg);
            let qd = q_decode(&s, &kp.private, &cfg);
            assert_eq!(bf, qd);
        }
    }

    #[test]
    fn decrypt_roundtrip_all_flavors() {
        let params = SystemParams::new(2, 389, 7, vec![1, 2], 8).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(58);
        let kp = keygen(&params, &mut rng).unwrap();
        for flavor in [DecoderFlavor::BfPrivate, DecoderFlavor::QDecoder, DecoderFlavor::BfHtilde] {
            let cfg = DecoderConfig::new(flavor);
            let mut ok = 0;
            for _ in 0..50 {
                let u = sample_message(&params, &mut rng);
                let e = support_to_blocks(&sample_error(params.n(), params.t, &mut rng), params.n0, params.p);
                let x = encrypt(&u, &kp.public, &e).unwrap();
                if let Ok(dec) = decrypt(&x, &kp.private, &cfg) {
                    assert_eq!(dec, u, "flavor {}", flavor.name());
                    ok += 1;
                }
            }
            assert!(ok >= 40, "flavor {} succeeded only {ok}/50", flavor.name());
        }
    }

    #[test]
    fn zero_error_always_decrypts() {
        let params = SystemParams::new(2, 101, 5, vec![1, 2], 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(59);
        let kp = keygen(&params, &mut rng).unwrap();
        let cfg = DecoderConfig::new(DecoderFlavor::QDecoder);
        for _ in 0..50 {
            let u = sample_message(&params, &mut rng);
            let e = vec![BitVec::zeros(params.p); params.n0];
            let x = encrypt(&u, &kp.public, &e).unwrap();
            assert_eq!(decrypt(&x, &kp.private, &cfg).unwrap(), u);
        }
    }

    #[test]
    fn dfr_zero_at_t_zero_and_one_at_saturation() {
        let params = mdpc_params();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(60)).unwrap();
        let cfg = DecoderConfig::new(DecoderFlavor::BfPrivate);
        let zero = estimate_dfr(&kp, &cfg, 0, 200, 1, 2);
        assert_eq!(zero.failures, 0);
        let sat = estimate_dfr(&kp, &cfg, params.p - 1, 50, 1, 2);
        assert!(sat.rate > 0.9, "rate {}", sat.rate);
    }

    #[test]
    fn dfr_invariant_to_worker_count() {
        let params = mdpc_params();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(61)).unwrap();
        let cfg = DecoderConfig::new(DecoderFlavor::BfPrivate);
        let a = estimate_dfr(&kp, &cfg, 30, 400, 7, 1);
        let b = estimate_dfr(&kp, &cfg, 30, 400, 7, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn dfr_monotone_in_t() {
        let params = mdpc_params();
        let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(62)).unwrap();
        let cfg = DecoderConfig::new(DecoderFlavor::BfPrivate);
        let rates: Vec<f64> = [10usize, 22, 30, 38, 60]
            .iter()
            .map(|&t| estimate_dfr(&kp, &cfg, t, 400, 11, 4).rate)
            .collect();
        for w in rates.windows(2) {
            assert!(w[0] <= w[1] + 1e-12, "rates not monotone: {rates:?}");
        }
    }
}
