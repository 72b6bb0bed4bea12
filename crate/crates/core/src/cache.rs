//! On-disk zero cache.
//!
//! Layout, one record per line:
//!
//! ```text
//! zerocache v1 tol=1e-9
//! # t_max=5000
//! 1,14.1347251417,4.6e-10
//! ```
//!
//! Ordinates are printed to 12 significant digits. On load every zero is
//! re-bracketed over an interval widened by the print resolution and then
//! refined back to the cache tolerance, so a damaged file is caught instead
//! of trusted.

use crate::error::{Error, Result};
use crate::isolate::FlaggedBlock;
use crate::zeros::{find_zeros, ZetaZero};
use crate::zeta::hardy_z_unchecked;
use rayon::prelude::*;
use std::fs;
use std::io::Write;
use std::path::Path;

pub const ZERO_CACHE_VERSION: &str = "zerocache v1";

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCache {
    pub tol: f64,
    /// Height up to which the list is complete.
    pub t_max: f64,
    pub zeros: Vec<ZetaZero>,
}

impl ZeroCache {
    pub fn new(tol: f64) -> Self {
        ZeroCache { tol, t_max: 0.0, zeros: Vec::new() }
    }

    pub fn header(tol: f64) -> String {
        format!("{ZERO_CACHE_VERSION} tol={tol:e}")
    }

    /// Search `[self.t_max, t_max)` and append what is found.
    pub fn extend_to(&mut self, t_max: f64) -> Result<Vec<FlaggedBlock>> {
        if t_max <= self.t_max {
            return Ok(Vec::new());
        }
        let s = find_zeros(self.t_max, t_max, self.tol)?;
        self.zeros.extend(s.zeros);
        self.t_max = t_max;
        Ok(s.flagged)
    }

    /// Zeros with ordinate at most `t`.
    pub fn below(&self, t: f64) -> &[ZetaZero] {
        let k = self.zeros.partition_point(|z| z.gamma <= t);
        &self.zeros[..k]
    }

    pub fn to_text(&self) -> String {
        let mut s = Self::header(self.tol);
        s.push('\n');
        s.push_str(&format!("# t_max={}\n", self.t_max));
        for z in &self.zeros {
            s.push_str(&format!("{},{},{:e}\n", z.index, format_sig12(z.gamma), z.uncertainty));
        }
        s
    }

    /// Parse and re-verify a cache, refusing any header other than the one
    /// for `tol`.
    pub fn parse(text: &str, tol: f64) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().unwrap_or("").trim();
        let expected = Self::header(tol);
        if head != expected {
            return Err(Error::CacheVersion { found: head.to_string(), expected });
        }
        let mut t_max = None;
        let mut rows = Vec::new();
        for (no, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("t_max=") {
                    t_max = Some(parse_f64(v, no + 2)?);
                }
                continue;
            }
            let mut f = line.split(',');
            let (Some(n), Some(g), Some(u), None) = (f.next(), f.next(), f.next(), f.next()) else {
                return Err(Error::Cache(format!("line {}: expected n,gamma,uncertainty", no + 2)));
            };
            let index: u64 = n.trim().parse().map_err(|_| Error::Cache(format!("line {}: bad index `{n}`", no + 2)))?;
            rows.push((index, parse_f64(g, no + 2)?, parse_f64(u, no + 2)?));
        }
        let t_max = t_max.ok_or_else(|| Error::Cache("missing `# t_max=` line".into()))?;

        for (i, w) in rows.windows(2).enumerate() {
            if w[1].0 != w[0].0 + 1 || w[1].1 <= w[0].1 {
                return Err(Error::Cache(format!("rows {} and {} are out of order", i + 1, i + 2)));
            }
        }
        let zeros =
            rows.par_iter().map(|&(index, gamma, unc)| reverify(index, gamma, unc, tol)).collect::<Result<Vec<_>>>()?;
        Ok(ZeroCache { tol, t_max, zeros })
    }

    pub fn load(path: &Path, tol: f64) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, tol)
    }

    /// Write atomically: a sibling temp file is renamed over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_text().as_bytes())
    }
}

/// Write `bytes` to a temp file next to `path` and rename it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().ok_or_else(|| Error::Io(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::from(e)
    })
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Cache(format!("line {line}: bad number `{s}`")))
}

/// `x` printed with 12 significant digits in positional notation.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{:.*}", decimals, x)
}

fn print_resolution(x: f64) -> f64 {
    let mag = x.abs().log10().floor() as i32;
    0.5 * 10f64.powi(mag - 11)
}

fn reverify(index: u64, gamma: f64, unc: f64, tol: f64) -> Result<ZetaZero> {
    let w = unc + print_resolution(gamma) * 1.01;
    let (mut a, mut b) = (gamma - w, gamma + w);
    let za = hardy_z_unchecked(a);
    let zb = hardy_z_unchecked(b);
    if (za > 0.0) == (zb > 0.0) {
        return Err(Error::Cache(format!("zero {index} at {gamma} failed re-verification")));
    }
    let positive_at_a = za > 0.0;
    while 0.5 * (b - a) > tol {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        if (hardy_z_unchecked(m) > 0.0) == positive_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(ZetaZero { index, gamma: a + 0.5 * (b - a), uncertainty: 0.5 * (b - a) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(14.134725141734694), "14.1347251417");
        assert_eq!(format_sig12(4999.329681372973), "4999.32968137");
        assert_eq!(format_sig12(236.5242296658162), "236.524229666");
    }

    #[test]
    fn round_trip_reverifies() {
        let mut c = ZeroCache::new(1e-9);
        c.extend_to(60.0).unwrap();
        let text = c.to_text();
        assert!(text.starts_with("zerocache v1 tol=1e-9\n# t_max=60\n1,14.13472514"), "{text}");
        let back = ZeroCache::parse(&text, 1e-9).unwrap();
        assert_eq!(back.zeros.len(), c.zeros.len());
        for (a, b) in back.zeros.iter().zip(&c.zeros) {
            assert_eq!(a.index, b.index);
            assert!((a.gamma - b.gamma).abs() < 2e-9);
            assert!(a.uncertainty <= 1e-9);
        }
    }

    #[test]
    fn tolerance_mismatch_is_refused() {
        let text = "zerocache v1 tol=1e-9\n# t_max=10\n";
        assert!(matches!(ZeroCache::parse(text, 1e-8), Err(Error::CacheVersion { .. })));
        let text = "zerocache v2 tol=1e-9\n# t_max=10\n";
        assert!(matches!(ZeroCache::parse(text, 1e-9), Err(Error::CacheVersion { .. })));
    }

    #[test]
    fn corrupted_row_is_refused() {
        let text = "zerocache v1 tol=1e-9\n# t_max=20\n1,14.2,1e-10\n";
        assert!(matches!(ZeroCache::parse(text, 1e-9), Err(Error::Cache(_))));
        let text = "zerocache v1 tol=1e-9\n# t_max=20\n1,abc,1e-10\n";
        assert!(matches!(ZeroCache::parse(text, 1e-9), Err(Error::Cache(_))));
    }

    #[test]
    fn extension_matches_one_shot_search() {
        let mut c = ZeroCache::new(1e-9);
        c.extend_to(80.0).unwrap();
        c.extend_to(150.0).unwrap();
        let direct = find_zeros(0.0, 150.0, 1e-9).unwrap().zeros;
        assert_eq!(c.zeros, direct);
        assert_eq!(c.below(50.0).len(), 10);
    }
}
