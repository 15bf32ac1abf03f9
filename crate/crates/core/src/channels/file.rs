//! Channel specification files.
//!
//! ```toml
//! dim = 2
//! label = "bit-flip"
//! # one entry per Kraus operator: dim*dim [re, im] pairs, row-major
//! operators = [
//!   [[0.9, 0.0], [0.0, 0.0], [0.0, 0.0], [0.9, 0.0]],
//!   [[0.0, 0.0], [0.43588989435, 0.0], [0.43588989435, 0.0], [0.0, 0.0]],
//! ]
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::channels::kraus::KrausChannel;
use crate::error::{Error, Result};
use crate::qmath::{c, ComplexMatrix, C64};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelFile {
    dim: usize,
    label: String,
    operators: Vec<Vec<[f64; 2]>>,
}

pub fn parse_channel_spec(text: &str) -> Result<KrausChannel> {
    let raw: ChannelFile = toml::from_str(text).map_err(|e| toml_error(text, &e))?;
    if raw.dim == 0 {
        return Err(Error::Config {
            field: "dim".into(),
            message: "must be at least 1".into(),
        });
    }
    if raw.operators.is_empty() {
        return Err(Error::Config {
            field: "operators".into(),
            message: "at least one operator is required".into(),
        });
    }
    let ops = raw
        .operators
        .iter()
        .enumerate()
        .map(|(i, entries)| {
            let vals: Vec<C64> = entries.iter().map(|[r, im]| c(*r, *im)).collect();
            ComplexMatrix::from_row_major(raw.dim, &vals).map_err(|e| Error::Config {
                field: "operators".into(),
                message: format!("operator {i}: {e}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ch = KrausChannel::new(ops, raw.label)?;
    ch.ensure_valid()?;
    Ok(ch)
}

pub fn load_channel_file(path: &Path) -> Result<KrausChannel> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_channel_spec(&text)
}

/// Serialises a channel in the same format (full `f64` precision).
pub fn write_channel_spec(ch: &KrausChannel) -> String {
    let mut out = format!(
        "dim = {}\nlabel = {:?}\noperators = [\n",
        ch.dim(),
        ch.label()
    );
    for op in ch.operators() {
        let pairs: Vec<String> = op
            .to_row_major()
            .iter()
            .map(|z| format!("[{:?}, {:?}]", z.re, z.im))
            .collect();
        out.push_str(&format!("  [{}],\n", pairs.join(", ")));
    }
    out.push_str("]\n");
    out
}

/// Converts a TOML error into a line-numbered parse error.
pub(crate) fn toml_error(text: &str, e: &toml::de::Error) -> Error {
    let line = e
        .span()
        .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
        .unwrap_or(0);
    Error::Parse {
        line,
        message: e.message().to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::kraus::{pauli_channel, Pauli};

    #[test]
    fn round_trip() {
        let ch = pauli_channel(0.1, 0.0, 0.3).unwrap();
        let back = parse_channel_spec(&write_channel_spec(&ch)).unwrap();
        assert_eq!(back, ch);
    }

    #[test]
    fn bit_flip_file() {
        let text = "dim = 2\nlabel = \"flip\"\noperators = [\n  [[0.8, 0], [0, 0], [0, 0], [0.8, 0]],\n  [[0, 0], [0.6, 0], [0.6, 0], [0, 0]],\n]\n";
        let ch = parse_channel_spec(text).unwrap();
        assert_eq!(ch.label(), "flip");
        assert_eq!(
            Pauli::decompose_scaled(&ch.operators()[1], 1e-12),
            Some((Pauli::X, 0.6))
        );
    }

    #[test]
    fn errors_carry_lines_and_fields() {
        let text = "dim = 2\nlabel = \"x\"\nbogus = 1\noperators = []\n";
        match parse_channel_spec(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let short = "dim = 2\nlabel = \"x\"\noperators = [[[1, 0]]]\n";
        assert!(matches!(
            parse_channel_spec(short),
            Err(Error::Config { .. })
        ));
        let incomplete = "dim = 1\nlabel = \"x\"\noperators = [[[0.5, 0]]]\n";
        assert!(matches!(
            parse_channel_spec(incomplete),
            Err(Error::IncompleteChannel { .. })
        ));
    }
}
