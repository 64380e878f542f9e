//! CSV encoding and atomic file output.
//!
//! Floats are written in Rust's shortest round-trip form (`{:?}`), so
//! parsing a written value gives back the identical `f64`.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

use super::sweep::{RowFlag, SweepMethod, SweepRow};

pub const SWEEP_HEADER: [&str; 7] = ["model", "aT", "bT", "method", "P", "flag", "error_estimate"];
pub const TRACE_HEADER: [&str; 8] = ["tau", "re_c1", "im_c1", "re_c2", "im_c2", "P", "rho", "gamma"];

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Encode records under a header into CSV bytes.
pub fn encode_csv<I, R>(header: &[&str], records: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    // writing to memory cannot fail
    w.write_record(header).expect("in-memory csv");
    for r in records {
        w.write_record(r).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

pub fn sweep_csv(rows: &[SweepRow]) -> Vec<u8> {
    encode_csv(
        &SWEEP_HEADER,
        rows.iter().map(|r| {
            vec![
                r.model.to_string(),
                fmt_f64(r.a_t),
                fmt_f64(r.b_t),
                r.method.to_string(),
                opt_f64(r.p),
                r.flag.as_str().to_string(),
                opt_f64(r.error_estimate),
            ]
        }),
    )
}

fn csv_err(origin: &Path, message: impl Into<String>) -> Error {
    Error::Csv {
        path: origin.to_path_buf(),
        message: message.into(),
    }
}

/// Decode CSV bytes, checking the header. `origin` labels errors.
pub fn decode_csv(bytes: &[u8], header: &[&str], origin: &Path) -> Result<Vec<Vec<String>>> {
    let mut r = csv::Reader::from_reader(bytes);
    let found = r.headers().map_err(|e| csv_err(origin, e.to_string()))?;
    if found.iter().ne(header.iter().copied()) {
        return Err(csv_err(origin, format!("expected header `{}`", header.join(","))));
    }
    r.records()
        .map(|rec| {
            rec.map(|rec| rec.iter().map(str::to_string).collect())
                .map_err(|e| csv_err(origin, e.to_string()))
        })
        .collect()
}

pub fn parse_sweep_csv(bytes: &[u8], origin: &Path) -> Result<Vec<SweepRow>> {
    let num = |s: &str, line: usize| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| csv_err(origin, format!("record {line}: bad number `{s}`")))
    };
    let opt = |s: &str, line: usize| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            num(s, line).map(Some)
        }
    };
    decode_csv(bytes, &SWEEP_HEADER, origin)?
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let line = i + 2;
            let flag = match f[5].as_str() {
                "" => RowFlag::None,
                "gt1" => RowFlag::Gt1,
                "err" => RowFlag::Err,
                other => return Err(csv_err(origin, format!("record {line}: unknown flag `{other}`"))),
            };
            Ok(SweepRow {
                model: f[0].parse().map_err(|_| csv_err(origin, format!("record {line}: bad model")))?,
                a_t: num(&f[1], line)?,
                b_t: num(&f[2], line)?,
                method: f[3]
                    .parse::<SweepMethod>()
                    .map_err(|_| csv_err(origin, format!("record {line}: bad method")))?,
                p: opt(&f[4], line)?,
                flag,
                error_estimate: opt(&f[6], line)?,
                error: None,
            })
        })
        .collect()
}

/// Write `bytes` to `path` through a temporary file in the same directory,
/// so readers never see a partial file. Without `overwrite` an existing
/// file is an error.
pub fn write_atomic(path: &Path, bytes: &[u8], overwrite: bool) -> Result<()> {
    if !overwrite && path.exists() {
        return Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::AlreadyExists, "refusing to overwrite (pass --overwrite)"),
        ));
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(tmp.path(), e))?;
    let persisted = if overwrite {
        tmp.persist(path).map(|_| ())
    } else {
        tmp.persist_noclobber(path).map(|_| ())
    };
    persisted.map_err(|e| Error::io(path, e.error))
}
