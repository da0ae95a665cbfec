//! File formats: signal CSV and binary, sparse coefficient CSV, state dumps.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::loaders::SparseState;
use crate::signals::Signal;
use crate::transforms::{CompressedVector, ThresholdMode, ThresholdPolicy, TransformDescriptor, TransformKind};
use crate::{Error, Result};

fn open(path: &Path) -> Result<fs::File> {
    fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::Io(e),
    })
}

/// One sample per line; complex signals use `re,im` columns.
pub fn write_signal_csv(w: &mut impl Write, s: &Signal) -> Result<()> {
    if s.is_real() {
        for z in s.samples() {
            writeln!(w, "{}", z.re)?;
        }
    } else {
        writeln!(w, "re,im")?;
        for z in s.samples() {
            writeln!(w, "{},{}", z.re, z.im)?;
        }
    }
    Ok(())
}

/// Reads a signal CSV, zero-padding at the tail to a power of two and
/// normalizing. A non-numeric first line is treated as a header.
pub fn read_signal_csv(path: &Path) -> Result<Signal> {
    let rdr = BufReader::new(open(path)?);
    let mut v = Vec::new();
    for (i, line) in rdr.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let mut parts = t.split(',').map(str::trim);
        let re = parts.next().unwrap_or("").parse::<f64>();
        let im = parts.next().map(|p| p.parse::<f64>());
        match (re, im) {
            (Ok(re), None) => v.push(Complex64::new(re, 0.0)),
            (Ok(re), Some(Ok(im))) => v.push(Complex64::new(re, im)),
            _ if i == 0 => continue,
            _ => return Err(Error::NonNumeric { row: i, value: t.to_string() }),
        }
    }
    if v.is_empty() {
        return Err(Error::EmptyColumn(path.display().to_string()));
    }
    let original_len = v.len();
    v.resize(original_len.next_power_of_two(), Complex64::new(0.0, 0.0));
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut s = Signal::from_samples(v, label)?;
    s.original_len = original_len;
    Ok(s)
}

/// `u64` little-endian count followed by `f64` little-endian samples.
pub fn write_signal_bin(w: &mut impl Write, s: &Signal) -> Result<()> {
    if !s.is_real() {
        return Err(Error::InvalidArgument("binary signal format holds real samples only".into()));
    }
    w.write_all(&(s.len() as u64).to_le_bytes())?;
    for z in s.samples() {
        w.write_all(&z.re.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_signal_bin(path: &Path) -> Result<Signal> {
    let mut bytes = Vec::new();
    open(path)?.read_to_end(&mut bytes)?;
    let bad = |msg: &str| Error::Parse { line: 0, msg: msg.to_string() };
    if bytes.len() < 8 {
        return Err(bad("truncated count"));
    }
    let count = u64::from_le_bytes(bytes[..8].try_into().expect("8 bytes")) as usize;
    let body = &bytes[8..];
    if body.len() != count.checked_mul(8).ok_or_else(|| bad("count overflow"))? {
        return Err(bad("sample count does not match file size"));
    }
    let x: Vec<f64> = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Signal::from_samples(x.into_iter().map(|v| Complex64::new(v, 0.0)).collect(), label)
}

/// Metadata lines of a sparse coefficient file.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseHeader {
    pub n: usize,
    pub descriptor: Option<TransformDescriptor>,
    pub threshold: Option<ThresholdPolicy>,
}

pub fn write_sparse_csv(w: &mut impl Write, header: &SparseHeader, entries: &[(u64, Complex64)]) -> Result<()> {
    if let Some(d) = header.descriptor {
        writeln!(w, "# kind={}", d.kind)?;
        writeln!(w, "# levels={}", d.levels)?;
    }
    if let Some(t) = header.threshold {
        writeln!(w, "# tau_mode={}", t.mode)?;
        writeln!(w, "# tau={}", t.value)?;
    }
    writeln!(w, "# n={}", header.n)?;
    writeln!(w, "index,re,im")?;
    for (i, a) in entries {
        writeln!(w, "{i},{},{}", a.re, a.im)?;
    }
    Ok(())
}

pub fn write_compressed_csv(w: &mut impl Write, x: &CompressedVector) -> Result<()> {
    let header = SparseHeader { n: x.n(), descriptor: Some(x.descriptor), threshold: x.threshold };
    write_sparse_csv(w, &header, &x.nonzeros())
}

pub fn write_sparse_state_csv(w: &mut impl Write, s: &SparseState) -> Result<()> {
    let header = SparseHeader { n: s.n(), descriptor: None, threshold: None };
    write_sparse_csv(w, &header, s.entries())
}

pub fn read_sparse_csv(path: &Path) -> Result<(SparseHeader, Vec<(u64, Complex64)>)> {
    let rdr = BufReader::new(open(path)?);
    let mut n = None;
    let (mut kind, mut levels, mut mode, mut tau) = (None, None, None, None);
    let mut entries = Vec::new();
    for (i, line) in rdr.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        let perr = |msg: String| Error::Parse { line: i + 1, msg };
        if t.is_empty() || t.starts_with("index") {
            continue;
        }
        if let Some(meta) = t.strip_prefix('#') {
            let Some((k, v)) = meta.split_once('=') else { continue };
            let v = v.trim();
            match k.trim() {
                "n" => n = Some(v.parse().map_err(|_| perr(format!("bad n {v:?}")))?),
                "kind" => kind = Some(v.parse::<TransformKind>()?),
                "levels" => levels = Some(v.parse().map_err(|_| perr(format!("bad levels {v:?}")))?),
                "tau_mode" => mode = Some(v.parse::<ThresholdMode>()?),
                "tau" => tau = Some(v.parse().map_err(|_| perr(format!("bad tau {v:?}")))?),
                _ => {}
            }
            continue;
        }
        let f: Vec<&str> = t.split(',').map(str::trim).collect();
        if f.len() != 3 {
            return Err(perr(format!("expected index,re,im, got {t:?}")));
        }
        let idx = f[0].parse::<u64>().map_err(|_| perr(format!("bad index {:?}", f[0])))?;
        let re = f[1].parse::<f64>().map_err(|_| perr(format!("bad real part {:?}", f[1])))?;
        let im = f[2].parse::<f64>().map_err(|_| perr(format!("bad imaginary part {:?}", f[2])))?;
        entries.push((idx, Complex64::new(re, im)));
    }
    let n = n.ok_or_else(|| Error::Parse { line: 0, msg: "missing n header".into() })?;
    let descriptor = kind.map(|kind| TransformDescriptor { kind, levels: levels.unwrap_or(0) });
    let threshold = match (mode, tau) {
        (Some(m), Some(v)) => Some(ThresholdPolicy::new(m, v)?),
        _ => None,
    };
    Ok((SparseHeader { n, descriptor, threshold }, entries))
}

pub fn read_compressed_csv(path: &Path) -> Result<CompressedVector> {
    let (h, entries) = read_sparse_csv(path)?;
    let descriptor = h
        .descriptor
        .ok_or_else(|| Error::Parse { line: 0, msg: "missing kind header".into() })?;
    if h.n > 30 {
        return Err(Error::Capacity(h.n, 30));
    }
    let mut c = vec![Complex64::new(0.0, 0.0); 1 << h.n];
    for (i, a) in entries {
        let slot = c.get_mut(i as usize).ok_or_else(|| Error::InvalidArgument(format!("index {i} outside n={}", h.n)))?;
        *slot = a;
    }
    let mut x = CompressedVector::new(c, descriptor)?;
    x.threshold = h.threshold;
    Ok(x)
}

pub fn read_sparse_state_csv(path: &Path) -> Result<SparseState> {
    let (h, entries) = read_sparse_csv(path)?;
    SparseState::new(h.n, entries)
}

/// Every amplitude as `index,re,im`.
pub fn write_state_csv(w: &mut impl Write, amps: &[Complex64]) -> Result<()> {
    writeln!(w, "index,re,im")?;
    for (i, a) in amps.iter().enumerate() {
        writeln!(w, "{i},{},{}", a.re, a.im)?;
    }
    Ok(())
}
