// dev-only: sweep DFR across candidate toy presets to pick operating points
use qclab_core::code::{keygen, SystemParams};
use qclab_core::decoder::{estimate_dfr, DecoderConfig, DecoderFlavor, FlipCap};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn sweep(label: &str, params: SystemParams, flavor: DecoderFlavor, ts: &[usize], trials: u64) {
    let kp = keygen(&params, &mut ChaCha12Rng::seed_from_u64(1)).unwrap();
    let mut cfg = DecoderConfig::new(flavor);
    if std::env::var("UNCAP").is_ok() {
        cfg.flip_cap = FlipCap::Unlimited;
    }
    println!("== {label} ({}) decoder={}", params.summary(), flavor.name());
    for &t in ts {
        let est = estimate_dfr(&kp, &cfg, t, trials, 42, 8);
        println!(
            "  t={t:3}  rate={:.4}  ({} / {})  ci=[{:.4},{:.4}]",
            est.rate, est.failures, est.trials, est.ci_low, est.ci_high
        );
    }
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "mdpc".into());
    match which.as_str() {
        "mdpc" => sweep(
            "toy mdpc p=587 dv=15",
            SystemParams::mdpc(2, 587, 15, 28).unwrap(),
            DecoderFlavor::BfPrivate,
            &[16, 18, 20, 22, 24, 26, 28, 30, 32],
            2000,
        ),
        "ldpcq" => {
            let params = SystemParams::new(2, 509, 7, vec![1, 2], 12).unwrap();
            sweep(
                "toy ldpc-q p=509 dv=7 m=[1,2]",
                params.clone(),
                DecoderFlavor::QDecoder,
                &[6, 8, 10, 12, 14, 16],
                2000,
            );
            sweep(
                "same bf-htilde",
                params,
                DecoderFlavor::BfHtilde,
                &[6, 8, 10, 12, 14, 16],
                2000,
            );
        }
        "ldpcbf" => sweep(
            "toy ldpc-bf p=887 dv=5 m=[1,2]",
            SystemParams::new(2, 887, 5, vec![1, 2], 10).unwrap(),
            DecoderFlavor::BfPrivate,
            &[4, 6, 8, 10, 12, 14],
            2000,
        ),
        "fhz" => sweep(
            "toy fhz p=101 dv=5 m=[1,2]",
            SystemParams::new(2, 101, 5, vec![1, 2], 3).unwrap(),
            DecoderFlavor::BfHtilde,
            &[1, 2, 3, 4, 5],
            2000,
        ),
        other => eprintln!("unknown sweep {other}"),
    }
}
