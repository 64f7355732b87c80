//! graph6 codec, header-less, single-byte size field (`n <= 62`).
//!
//! The upper triangle is read column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed six bits per byte most significant bit first, and offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_N: usize = 62;

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_N {
        return Err(Error::TooLarge { n, max: MAX_N });
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

pub fn decode(text: &str) -> Result<Graph> {
    let bytes = text.trim_ascii().as_bytes();
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if !(63..=126).contains(&head) {
        return Err(Error::Graph6(format!("size byte {head} out of range")));
    }
    let n = (head - 63) as usize;
    if n > MAX_N {
        return Err(Error::Graph6(
            "multi-byte size fields are not supported".into(),
        ));
    }
    let slots = n * n.saturating_sub(1) / 2;
    let expected = slots.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::new(n);
    let mut slot = 0;
    for (k, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!(
                "byte {b} at offset {} out of range",
                k + 1
            )));
        }
        let v = b - 63;
        for bit in 0..6 {
            let set = v >> (5 - bit) & 1 == 1;
            if slot >= slots {
                if set {
                    return Err(Error::Graph6("padding bits set".into()));
                }
            } else if set {
                let (i, j) = slot_pair(slot);
                g.add_edge(i, j);
            }
            slot += 1;
        }
    }
    Ok(g)
}

/// Column-major upper-triangle slot to vertex pair `(i, j)`, `i < j`.
fn slot_pair(slot: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= slot {
        start += j;
        j += 1;
    }
    (slot - start, j)
}
