//! On-disk table format.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic   4 bytes   "LUKT"
//! version u32       1
//! count   u64       N
//! values  N x u64
//! check   u64       sum of all values mod 2^64
//! ```

use std::io::{Read, Write};

use thiserror::Error;

use super::LuckyTable;

const MAGIC: [u8; 4] = *b"LUKT";
const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum TableIoError {
    #[error("corrupt header: {0}")]
    CorruptHeader(String),
    #[error("truncated stream: expected {expected} more bytes for {context}")]
    Truncated { expected: usize, context: &'static str },
    #[error("checksum mismatch: stored {stored:#018x}, computed {computed:#018x}")]
    ChecksumMismatch { stored: u64, computed: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Writes `table` in the LUKT format.
pub fn save_table<W: Write>(table: &LuckyTable, mut dest: W) -> Result<(), TableIoError> {
    dest.write_all(&MAGIC)?;
    dest.write_all(&VERSION.to_le_bytes())?;
    dest.write_all(&(table.len() as u64).to_le_bytes())?;
    let mut checksum = 0u64;
    for &v in table.values() {
        dest.write_all(&v.to_le_bytes())?;
        checksum = checksum.wrapping_add(v);
    }
    dest.write_all(&checksum.to_le_bytes())?;
    Ok(())
}

fn read_exact_or<R: Read>(
    src: &mut R,
    buf: &mut [u8],
    context: &'static str,
) -> Result<(), TableIoError> {
    let mut filled = 0usize;
    while filled < buf.len() {
        match src.read(&mut buf[filled..]) {
            Ok(0) => {
                return Err(TableIoError::Truncated {
                    expected: buf.len() - filled,
                    context,
                })
            }
            Ok(n) => filled += n,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

/// Reads a LUKT stream back into a table.
///
/// Header, truncation and checksum problems are reported as distinct
/// errors. The values themselves are not re-validated here; use
/// [`LuckyTable::validate`] for that.
pub fn load_table<R: Read>(mut src: R) -> Result<LuckyTable, TableIoError> {
    let mut magic = [0u8; 4];
    read_exact_or(&mut src, &mut magic, "magic")?;
    if magic != MAGIC {
        return Err(TableIoError::CorruptHeader(format!(
            "bad magic {:02x?}",
            magic
        )));
    }
    let mut word4 = [0u8; 4];
    read_exact_or(&mut src, &mut word4, "version")?;
    let version = u32::from_le_bytes(word4);
    if version != VERSION {
        return Err(TableIoError::CorruptHeader(format!(
            "unsupported version {version}"
        )));
    }
    let mut word8 = [0u8; 8];
    read_exact_or(&mut src, &mut word8, "count")?;
    let count = u64::from_le_bytes(word8) as usize;

    let mut values = Vec::new();
    values
        .try_reserve_exact(count)
        .map_err(|_| TableIoError::CorruptHeader(format!("implausible count {count}")))?;
    let mut checksum = 0u64;
    for _ in 0..count {
        read_exact_or(&mut src, &mut word8, "values")?;
        let v = u64::from_le_bytes(word8);
        checksum = checksum.wrapping_add(v);
        values.push(v);
    }
    read_exact_or(&mut src, &mut word8, "checksum")?;
    let stored = u64::from_le_bytes(word8);
    if stored != checksum {
        return Err(TableIoError::ChecksumMismatch {
            stored,
            computed: checksum,
        });
    }
    Ok(LuckyTable::from_values_unchecked(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::generate;

    fn roundtrip_bytes(n: usize) -> Vec<u8> {
        let table = generate(n).unwrap();
        let mut buf = Vec::new();
        save_table(&table, &mut buf).unwrap();
        buf
    }

    #[test]
    fn roundtrip_identity() {
        let table = generate(10).unwrap();
        let mut buf = Vec::new();
        save_table(&table, &mut buf).unwrap();
        let back = load_table(buf.as_slice()).unwrap();
        assert_eq!(table, back);
    }

    #[test]
    fn format_is_bit_exact() {
        let buf = roundtrip_bytes(3);
        // "LUKT" | version 1 | count 3 | 2, 3, 7 | checksum 12
        let mut expected = Vec::new();
        expected.extend_from_slice(b"LUKT");
        expected.extend_from_slice(&1u32.to_le_bytes());
        expected.extend_from_slice(&3u64.to_le_bytes());
        for v in [2u64, 3, 7] {
            expected.extend_from_slice(&v.to_le_bytes());
        }
        expected.extend_from_slice(&12u64.to_le_bytes());
        assert_eq!(buf, expected);
    }

    #[test]
    fn wrong_magic_is_corrupt_header() {
        let mut buf = roundtrip_bytes(5);
        buf[0] = b'X';
        assert!(matches!(
            load_table(buf.as_slice()),
            Err(TableIoError::CorruptHeader(_))
        ));
    }

    #[test]
    fn wrong_version_is_corrupt_header() {
        let mut buf = roundtrip_bytes(5);
        buf[4] = 9;
        assert!(matches!(
            load_table(buf.as_slice()),
            Err(TableIoError::CorruptHeader(_))
        ));
    }

    #[test]
    fn short_body_is_truncation() {
        let buf = roundtrip_bytes(5);
        let cut = &buf[..buf.len() - 12];
        assert!(matches!(
            load_table(cut),
            Err(TableIoError::Truncated { .. })
        ));
    }

    #[test]
    fn flipped_value_is_checksum_mismatch() {
        let mut buf = roundtrip_bytes(5);
        let off = 16; // first value
        buf[off] ^= 0x01;
        assert!(matches!(
            load_table(buf.as_slice()),
            Err(TableIoError::ChecksumMismatch { .. })
        ));
    }
}
