use crate::config::RunConfig;
use crate::error::Result;
use primezero::cache::{write_atomic, ZERO_CACHE_VERSION};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub const TOOL: &str = "primezero";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const PRIME_CACHE_VERSION: &str = "primecache v1";

fn short(version: &str) -> &str {
    version.rsplit(' ').next().unwrap_or(version)
}

/// `# primezero 0.1.0 config=<hash> zerocache=v1 primecache=v1`
pub fn header_line(cfg: &RunConfig) -> String {
    format!(
        "# {TOOL} {VERSION} config={} zerocache={} primecache={}",
        cfg.hash(),
        short(ZERO_CACHE_VERSION),
        short(PRIME_CACHE_VERSION)
    )
}

#[derive(Debug, Serialize)]
pub struct JsonHeader {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub zerocache: &'static str,
    pub primecache: &'static str,
    pub config: serde_json::Value,
}

pub fn json_header(cfg: &RunConfig) -> JsonHeader {
    JsonHeader {
        tool: TOOL,
        version: VERSION,
        config_hash: cfg.hash(),
        zerocache: short(ZERO_CACHE_VERSION),
        primecache: short(PRIME_CACHE_VERSION),
        config: serde_json::to_value(cfg).expect("config serialises"),
    }
}

/// A float with 17 significant digits, positional unless very large or small.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..16).contains(&mag) {
        return format!("{x:.16e}");
    }
    format!("{:.*}", (16 - mag).max(0) as usize, x)
}

/// CSV text with the provenance header, the echoed config and the column row.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(cfg: &RunConfig, columns: &[&str]) -> Self {
        let mut text = header_line(cfg);
        text.push('\n');
        text.push_str("# ");
        text.push_str(&cfg.canonical());
        text.push('\n');
        text.push_str(&columns.join(","));
        text.push('\n');
        Csv { text }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Pretty JSON with `header` first, newline terminated.
pub fn json_document<T: Serialize>(cfg: &RunConfig, body: &T) -> Result<String> {
    let mut v = serde_json::to_value(body)?;
    let mut doc = serde_json::Map::new();
    doc.insert("header".into(), serde_json::to_value(json_header(cfg))?);
    if let serde_json::Value::Object(m) = &mut v {
        doc.append(m);
    } else {
        doc.insert("data".into(), v);
    }
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(doc))?;
    s.push('\n');
    Ok(s)
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()?;
        }
    }
    Ok(())
}
