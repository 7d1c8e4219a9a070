//! Circular distances and distance spectra.
//!
//! The distance between two support positions is the circular gap
//! min{±(j1-j2) mod p}; the spectrum of a vector maps each distance to the
//! number of unordered support pairs realising it.  Every reaction attack
//! estimates membership in some spectrum, so this is the common currency of
//! the attack and reconstruction modules.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Circular distance min{±(j1-j2) mod p}; lies in [1, p/2].
pub fn distance(j1: usize, j2: usize, p: usize) -> Result<usize> {
    if j1 == j2 {
        return Err(Error::EqualIndices);
    }
    if j1 >= p || j2 >= p {
        return Err(Error::InvalidParams(format!(
            "indices {j1},{j2} not below modulus {p}"
        )));
    }
    let diff = if j1 > j2 { j1 - j2 } else { j2 - j1 };
    Ok(diff.min(p - diff))
}

/// Distance spectrum of a single vector: distance -> multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceSpectrum {
    p: usize,
    multiplicities: BTreeMap<usize, usize>,
}

impl DistanceSpectrum {
    pub fn modulus(&self) -> usize {
        self.p
    }

    /// Multiplicity of `d`; absent distances have multiplicity zero.
    pub fn multiplicity(&self, d: usize) -> usize {
        self.multiplicities.get(&d).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities.iter().map(|(&d, &m)| (d, m))
    }

    /// The distances present, as a set.
    pub fn distance_set(&self) -> BTreeSet<usize> {
        self.multiplicities.keys().copied().collect()
    }

    pub fn total_pairs(&self) -> usize {
        self.multiplicities.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// CSV rows `distance,multiplicity`, ascending by distance.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance,multiplicity\n");
        for (d, m) in self.iter() {
            out.push_str(&format!("{d},{m}\n"));
        }
        out
    }
}

/// Spectrum of a support set modulo p.
pub fn spectrum(support: &[usize], p: usize) -> DistanceSpectrum {
    let mut multiplicities = BTreeMap::new();
    for (a, &i) in support.iter().enumerate() {
        for &j in &support[a + 1..] {
            debug_assert!(i < p && j < p && i != j);
            let diff = if i > j { i - j } else { j - i };
            let d = diff.min(p - diff);
            *multiplicities.entry(d).or_insert(0) += 1;
        }
    }
    DistanceSpectrum { p, multiplicities }
}

/// Union of spectra as a distance set; multiplicities are deliberately
/// dropped, matching how the FHS+/FHZ procedures consume unions.
pub fn spectrum_union(spectra: &[DistanceSpectrum]) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    let mut modulus = None;
    for s in spectra {
        match modulus {
            None => modulus = Some(s.p),
            Some(p) if p != s.p => {
                return Err(Error::ModulusMismatch { left: p, right: s.p })
            }
            _ => {}
        }
        out.extend(s.multiplicities.keys().copied());
    }
    Ok(out)
}

/// Spectrum of the support negated mod p (the mirror vector).
pub fn mirror_support(support: &[usize], p: usize) -> Vec<usize> {
    let mut out: Vec<usize> = support
        .iter()
        .map(|&i| if i == 0 { 0 } else { p - i })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_support(p: usize, w: usize, rng: &mut ChaCha12Rng) -> Vec<usize> {
        let mut s = std::collections::BTreeSet::new();
        while s.len() < w {
            s.insert(rng.gen_range(0..p));
        }
        s.into_iter().collect()
    }

    #[test]
    fn distance_basics() {
        assert_eq!(distance(0, 3, 7).unwrap(), 3);
        assert_eq!(distance(1, 6, 7).unwrap(), 2);
        assert_eq!(distance(6, 1, 7).unwrap(), 2);
        assert!(matches!(distance(4, 4, 7), Err(Error::EqualIndices)));
    }

    #[test]
    fn distance_is_shift_invariant() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let p = 101;
        for _ in 0..200 {
            let j = rng.gen_range(0..p);
            let k = rng.gen_range(1..p);
            assert_eq!(
                distance(0, k, p).unwrap(),
                distance(j, (j + k) % p, p).unwrap()
            );
        }
    }

    #[test]
    fn spectrum_small_cases() {
        let s = spectrum(&[0, 1, 3], 7);
        assert_eq!(s.multiplicity(1), 1);
        assert_eq!(s.multiplicity(2), 1);
        assert_eq!(s.multiplicity(3), 1);
        assert_eq!(s.total_pairs(), 3);

        let s = spectrum(&[0, 1, 2], 7);
        assert_eq!(s.multiplicity(1), 2);
        assert_eq!(s.multiplicity(2), 1);

        assert!(spectrum(&[], 7).is_empty());
        assert!(spectrum(&[4], 7).is_empty());
    }

    #[test]
    fn spectrum_pair_count_matches_weight() {
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        for _ in 0..100 {
            let w = rng.gen_range(2..12);
            let s = random_support(211, w, &mut rng);
            assert_eq!(spectrum(&s, 211).total_pairs(), w * (w - 1) / 2);
        }
    }

    #[test]
    fn spectrum_invariant_under_shift_and_mirror() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let p = 509;
        for _ in 0..1000 {
            let sup = random_support(p, rng.gen_range(2..10), &mut rng);
            let shift = rng.gen_range(0..p);
            let shifted: Vec<usize> = sup.iter().map(|&i| (i + shift) % p).collect();
            assert_eq!(spectrum(&sup, p), spectrum(&shifted, p));
            assert_eq!(spectrum(&sup, p), spectrum(&mirror_support(&sup, p), p));
        }
    }

    #[test]
    fn union_semantics() {
        let a = spectrum(&[0, 1], 11); // {1}
        let b = spectrum(&[0, 2], 11); // {2}
        assert_eq!(
            spectrum_union(&[a.clone()]).unwrap(),
            a.distance_set()
        );
        let u = spectrum_union(&[a, b]).unwrap();
        assert_eq!(u.into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn union_rejects_modulus_mismatch() {
        let a = spectrum(&[0, 1], 11);
        let b = spectrum(&[0, 1], 13);
        assert!(spectrum_union(&[a, b]).is_err());
    }

    #[test]
    fn sparse_vectors_have_nearly_all_distinct_distances() {
        // supports the modelling assumption that the number of distances in a
        // sparse block is close to the number of pairs; measured and printed
        let mut rng = ChaCha12Rng::seed_from_u64(24);
        let p = 509;
        let trials = 2000;
        let mut with_repeat = 0usize;
        let mut pairs_total = 0usize;
        let mut pairs_lost = 0usize;
        for _ in 0..trials {
            let w = rng.gen_range(4..=10);
            let sup = random_support(p, w, &mut rng);
            let s = spectrum(&sup, p);
            let pairs = w * (w - 1) / 2;
            pairs_total += pairs;
            pairs_lost += pairs - s.distance_set().len();
            if s.iter().any(|(_, m)| m >= 2) {
                with_repeat += 1;
            }
        }
        let vec_frac = with_repeat as f64 / trials as f64;
        let pair_frac = pairs_lost as f64 / pairs_total as f64;
        println!(
            "weight<=10 vectors at p={p}: {vec_frac:.4} have a repeated distance, \
             {pair_frac:.4} of pairs collide"
        );
        assert!(pair_frac < 0.15, "pair collision fraction unexpectedly high: {pair_frac}");
    }

    #[test]
    fn csv_format() {
        let s = spectrum(&[0, 1, 3], 7);
        assert_eq!(s.to_csv(), "distance,multiplicity\n1,1\n2,1\n3,1\n");
    }
}
