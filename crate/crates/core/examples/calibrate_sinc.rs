//! Scans sinc sampling ranges for the one whose 10-level packet Haar
//! compression at 0.9% of max keeps about 110 coefficients (CR near 298).

use hqsp::signals::calibrate_sinc_half_width;

fn main() -> hqsp::Result<()> {
    let candidates: Vec<f64> = (4..=40).map(|h| h as f64 * 0.5).collect();
    let (best, rows) = calibrate_sinc_half_width(15, 10, 0.009, 110, &candidates)?;
    println!("half_width,retained,cr");
    for r in &rows {
        println!("{},{},{:.1}", r.half_width, r.retained, 32768.0 / r.retained as f64);
    }
    println!("best half width: {best}");
    Ok(())
}
