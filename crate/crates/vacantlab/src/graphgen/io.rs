//! Edge-list text export/import.
//!
//! Format: a header line `n r`, then one `u v` pair per edge (0-based).
//! Loops appear as `u u`, parallel edges are repeated. Edges are written in
//! canonical order: sorted by (min endpoint, max endpoint).

use super::{HalfEdgeGraph, UNPAIRED};
use crate::error::{Error, Result};
use std::io::{BufRead, Write};

pub fn export_edge_list<W: Write>(g: &HalfEdgeGraph, out: &mut W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.max_degree())?;
    for (u, v) in g.canonical_edge_list() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn import_edge_list<R: BufRead>(input: R) -> Result<HalfEdgeGraph> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))??;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .ok_or_else(|| Error::Parse("header missing n".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad n: {e}")))?;
    let r: usize = it
        .next()
        .ok_or_else(|| Error::Parse("header missing r".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad r: {e}")))?;

    let mut edges: Vec<(u32, u32)> = Vec::new();
    for line in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let u: u32 = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad edge line: {trimmed}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad endpoint: {e}")))?;
        let v: u32 = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad edge line: {trimmed}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad endpoint: {e}")))?;
        if u as usize >= n || v as usize >= n {
            return Err(Error::Parse(format!("endpoint out of range in: {trimmed}")));
        }
        edges.push((u.min(v), u.max(v)));
    }

    let mut degrees = vec![0usize; n];
    for &(u, v) in &edges {
        degrees[u as usize] += 1;
        degrees[v as usize] += 1;
    }
    if let Some((v, &d)) = degrees.iter().enumerate().find(|(_, &d)| d > r) {
        return Err(Error::Parse(format!(
            "vertex {v} has degree {d} exceeding header degree bound {r}"
        )));
    }

    // Assign half-edges in canonical edge order so a round trip is bit-stable.
    edges.sort_unstable();
    let mut offsets = vec![0u32; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + degrees[v] as u32;
    }
    let mut next_slot: Vec<u32> = offsets[..n].to_vec();
    let total: usize = degrees.iter().sum();
    let mut pairing = vec![UNPAIRED; total];
    for &(u, v) in &edges {
        let hu = next_slot[u as usize];
        next_slot[u as usize] += 1;
        let hv = next_slot[v as usize];
        next_slot[v as usize] += 1;
        pairing[hu as usize] = hv;
        pairing[hv as usize] = hu;
    }
    HalfEdgeGraph::from_pairing(&degrees, pairing)
}
