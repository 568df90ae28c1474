//! File formats: JSON containers for signals and fields, a binary format for
//! large arrays, and atomic writes.
//!
//! The binary format is one line of compact JSON header, a newline, then
//! little-endian `f64` pairs `(re, im)` in row-major order.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{make_grid, Axes, Field2, SampleGrid, Signal1};
use crate::quantization::OperatorMatrix;
use crate::transforms::Stft2Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalJson {
    pub n: usize,
    pub delta: f64,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub n: usize,
    pub delta: f64,
    pub axes: Axes,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

fn split(samples: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    (samples.iter().map(|z| z.re).collect(), samples.iter().map(|z| z.im).collect())
}

fn join(re: &[f64], im: &[f64]) -> Result<Vec<Complex64>> {
    if re.len() != im.len() {
        return Err(Error::Shape(format!("re has {} entries, im has {}", re.len(), im.len())));
    }
    Ok(re.iter().zip(im).map(|(a, b)| Complex64::new(*a, *b)).collect())
}

fn grid_from(n: usize, delta: f64) -> Result<SampleGrid> {
    let grid = make_grid(n)?;
    if (grid.delta() - delta).abs() > 1e-12 {
        return Err(Error::Format(format!("delta {delta} does not match 1/sqrt({n})")));
    }
    Ok(grid)
}

impl From<&Signal1> for SignalJson {
    fn from(s: &Signal1) -> Self {
        let (re, im) = split(s.samples());
        SignalJson { n: s.grid().len(), delta: s.grid().delta(), re, im }
    }
}

impl TryFrom<SignalJson> for Signal1 {
    type Error = Error;
    fn try_from(j: SignalJson) -> Result<Self> {
        Signal1::new(grid_from(j.n, j.delta)?, join(&j.re, &j.im)?)
    }
}

impl From<&Field2> for FieldJson {
    fn from(f: &Field2) -> Self {
        let (re, im) = split(f.samples());
        FieldJson { n: f.grid().len(), delta: f.grid().delta(), axes: f.axes(), re, im }
    }
}

impl TryFrom<FieldJson> for Field2 {
    type Error = Error;
    fn try_from(j: FieldJson) -> Result<Self> {
        Field2::new(grid_from(j.n, j.delta)?, j.axes, join(&j.re, &j.im)?)
    }
}

pub fn signal_to_json(s: &Signal1) -> Result<String> {
    Ok(serde_json::to_string(&SignalJson::from(s))? + "\n")
}

pub fn signal_from_json(text: &str) -> Result<Signal1> {
    serde_json::from_str::<SignalJson>(text)?.try_into()
}

pub fn field_to_json(f: &Field2) -> Result<String> {
    Ok(serde_json::to_string(&FieldJson::from(f))? + "\n")
}

pub fn field_from_json(text: &str) -> Result<Field2> {
    serde_json::from_str::<FieldJson>(text)?.try_into()
}

pub fn read_signal(path: &Path) -> Result<Signal1> {
    signal_from_json(&fs::read_to_string(path)?)
}

pub fn read_field(path: &Path) -> Result<Field2> {
    field_from_json(&fs::read_to_string(path)?)
}

pub fn write_signal(path: &Path, s: &Signal1) -> Result<()> {
    write_atomic(path, signal_to_json(s)?.as_bytes())
}

pub fn write_field(path: &Path, f: &Field2) -> Result<()> {
    write_atomic(path, field_to_json(f)?.as_bytes())
}

/// Writes to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| {
        Error::Io(std::io::Error::new(std::io::ErrorKind::InvalidInput, "output path has no file name"))
    })?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

pub const BINARY_FORMAT: &str = "tfweyl-binary";
pub const BINARY_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryHeader {
    pub format: String,
    pub version: u32,
    /// `"operator"` or `"stft2"`.
    pub kind: String,
    pub n: usize,
    pub shape: Vec<usize>,
    pub dtype: String,
}

impl BinaryHeader {
    fn new(kind: &str, n: usize, shape: Vec<usize>) -> Self {
        Self {
            format: BINARY_FORMAT.into(),
            version: BINARY_VERSION,
            kind: kind.into(),
            n,
            shape,
            dtype: "complex128-le".into(),
        }
    }

    fn count(&self) -> usize {
        self.shape.iter().product()
    }
}

pub fn encode_binary(header: &BinaryHeader, data: &[Complex64]) -> Result<Vec<u8>> {
    if header.count() != data.len() {
        return Err(Error::Shape(format!("header declares {} entries, got {}", header.count(), data.len())));
    }
    let mut out = serde_json::to_vec(header)?;
    out.push(b'\n');
    out.reserve(data.len() * 16);
    for z in data {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_binary(bytes: &[u8]) -> Result<(BinaryHeader, Vec<Complex64>)> {
    let nl =
        bytes.iter().position(|b| *b == b'\n').ok_or_else(|| Error::Format("binary file has no header line".into()))?;
    let header: BinaryHeader = serde_json::from_slice(&bytes[..nl])?;
    if header.format != BINARY_FORMAT || header.version != BINARY_VERSION || header.dtype != "complex128-le" {
        return Err(Error::Format(format!(
            "unsupported binary header {} v{} {}",
            header.format, header.version, header.dtype
        )));
    }
    let body = &bytes[nl + 1..];
    if body.len() != header.count() * 16 {
        return Err(Error::Format(format!("expected {} payload bytes, found {}", header.count() * 16, body.len())));
    }
    let data = body
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect();
    Ok((header, data))
}

pub fn operator_to_binary(op: &OperatorMatrix) -> Result<Vec<u8>> {
    let n = op.grid().len();
    encode_binary(&BinaryHeader::new("operator", n, vec![n, n]), op.entries())
}

pub fn operator_from_binary(bytes: &[u8]) -> Result<OperatorMatrix> {
    let (h, data) = decode_binary(bytes)?;
    if h.kind != "operator" || h.shape != [h.n, h.n] {
        return Err(Error::Format(format!("not an operator matrix: kind {} shape {:?}", h.kind, h.shape)));
    }
    OperatorMatrix::new(make_grid(h.n)?, data)
}

pub fn stft2_to_binary(s: &Stft2Result) -> Result<Vec<u8>> {
    let n = s.base_grid().len();
    encode_binary(&BinaryHeader::new("stft2", n, vec![n, n, n, n]), s.values())
}

pub fn stft2_from_binary(bytes: &[u8]) -> Result<Stft2Result> {
    let (h, data) = decode_binary(bytes)?;
    if h.kind != "stft2" || h.shape != [h.n, h.n, h.n, h.n] {
        return Err(Error::Format(format!("not an stft2 array: kind {} shape {:?}", h.kind, h.shape)));
    }
    Stft2Result::from_parts(make_grid(h.n)?, data)
}

pub fn write_operator(path: &Path, op: &OperatorMatrix) -> Result<()> {
    write_atomic(path, &operator_to_binary(op)?)
}

pub fn read_operator(path: &Path) -> Result<OperatorMatrix> {
    operator_from_binary(&fs::read(path)?)
}

pub fn write_stft2(path: &Path, s: &Stft2Result) -> Result<()> {
    write_atomic(path, &stft2_to_binary(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::gaussian;
    use crate::quantization::weyl_matrix;
    use crate::transforms::{stft2, wigner};

    #[test]
    fn signal_round_trip() {
        let g = make_grid(16).unwrap();
        let phi = gaussian(g).scale(Complex64::new(0.3, -0.7));
        let text = signal_to_json(&phi).unwrap();
        assert!(text.starts_with("{\"n\":16,\"delta\":0.25,"));
        assert_eq!(signal_from_json(&text).unwrap(), phi);
    }

    #[test]
    fn field_round_trip() {
        let g = make_grid(8).unwrap();
        let w = wigner(&gaussian(g), &gaussian(g)).unwrap();
        let back = field_from_json(&field_to_json(&w).unwrap()).unwrap();
        assert_eq!(back, w);
        assert_eq!(back.axes(), Axes::PositionFrequency);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(signal_from_json(r#"{"n":7,"delta":0.3,"re":[],"im":[]}"#), Err(Error::InvalidGrid(_))));
        assert!(matches!(
            signal_from_json(r#"{"n":8,"delta":0.3,"re":[0,0,0,0,0,0,0,0],"im":[0,0,0,0,0,0,0,0]}"#),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            signal_from_json(r#"{"n":8,"delta":0.3535533905932738,"re":[0],"im":[0]}"#),
            Err(Error::Shape(_))
        ));
        assert!(matches!(signal_from_json("not json"), Err(Error::Json(_))));
    }

    #[test]
    fn binary_round_trips() {
        let g = make_grid(8).unwrap();
        let phi = gaussian(g);
        let a = Field2::tensor(&phi, &phi).unwrap();
        let op = weyl_matrix(&a).unwrap();
        let bytes = operator_to_binary(&op).unwrap();
        let header_end = bytes.iter().position(|b| *b == b'\n').unwrap();
        assert_eq!(bytes.len(), header_end + 1 + 64 * 16);
        assert_eq!(operator_from_binary(&bytes).unwrap(), op);
        let s = stft2(&a, &a).unwrap();
        assert_eq!(stft2_from_binary(&stft2_to_binary(&s).unwrap()).unwrap(), s);
        assert!(operator_from_binary(&stft2_to_binary(&s).unwrap()).is_err());
        assert!(decode_binary(&bytes[..bytes.len() - 1]).is_err());
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read(&p).unwrap(), b"two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(matches!(write_atomic(&dir.path().join("missing/x"), b""), Err(Error::Io(_))));
    }
}
