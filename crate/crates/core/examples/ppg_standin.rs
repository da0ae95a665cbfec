//! Writes synthetic photoplethysmogram recordings in the `*_Signals.csv` layout.
//!
//! `cargo run --example ppg_standin -- <dir> [count] [samples] [seed]`

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

const FS: f64 = 125.0;

fn pulse(t: f64, center: f64, rise: f64, fall: f64) -> f64 {
    let z = if t < center { (t - center) / rise } else { (t - center) / fall };
    (-0.5 * z * z).exp()
}

fn recording(samples: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let hr = rng.random_range(60.0..95.0) / 60.0;
    let resp = rng.random_range(0.2..0.33);
    let wander = rng.random_range(0.02..0.06);
    let notch = rng.random_range(0.25..0.45);
    let offset = rng.random_range(0.8..1.2);
    let jitter = Normal::new(0.0, 0.01).expect("finite");
    let noise = Normal::new(0.0, 0.002).expect("finite");
    let step = Normal::new(0.0, 0.01).expect("finite");

    let duration = samples as f64 / FS;
    let mut beats = Vec::new();
    let mut t = rng.random_range(0.0..1.0 / hr);
    while t < duration + 1.0 {
        beats.push(t);
        t += (1.0 / hr) * (1.0 + jitter.sample(rng) + 0.02 * (2.0 * PI * resp * t).sin());
    }

    let mut walk = 0.0;
    (0..samples)
        .map(|i| {
            walk = 0.999 * walk + step.sample(rng);
            let t = i as f64 / FS;
            let breath = (2.0 * PI * resp * t).sin();
            let amp = 0.5 * (1.0 + 0.15 * breath);
            let mut v = offset + wander * breath + walk;
            for &b in beats.iter().filter(|&&b| (t - b).abs() < 1.5) {
                v += amp * (pulse(t, b + 0.15, 0.08, 0.15) + notch * pulse(t, b + 0.4, 0.1, 0.12));
            }
            v + noise.sample(rng)
        })
        .collect()
}

fn main() -> std::io::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dir = PathBuf::from(args.first().map(String::as_str).unwrap_or("data/ppg_standin"));
    let count: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let samples: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3000);
    let seed: u64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(7);

    std::fs::create_dir_all(&dir)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..count {
        let x = recording(samples, &mut rng);
        let path = dir.join(format!("standin_{:02}_Signals.csv", r + 1));
        let mut w = BufWriter::new(File::create(&path)?);
        writeln!(w, "Time [s], PLETH")?;
        for (i, v) in x.iter().enumerate() {
            writeln!(w, "{:.3},{:.5}", i as f64 / FS, v)?;
        }
        w.flush()?;
    }
    println!("wrote {count} recordings of {samples} samples to {}", dir.display());
    Ok(())
}
