//! Input formats for the reduction generators.
//!
//! Both formats are line oriented. Blank lines and lines starting with `#`
//! are skipped.
//!
//! Tripartite graph:
//! ```text
//! n m
//! A A B B C C        part of each vertex
//! u v [w]            m edge lines; weights select signed mode
//! ```
//!
//! Partitioned subgraph instance:
//! ```text
//! host_n host_m pattern_n pattern_m
//! c_0 ... c_{host_n - 1}   class of each host vertex
//! u v                      host_m host edge lines
//! i j                      pattern_m pattern edge lines
//! ```

use anyhow::{bail, Context, Result};

use kopt_core::hardness::{Part, PatternedHost, TriangleMode, TripartiteGraph};
use kopt_core::Weight;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn numbers<T: std::str::FromStr>(
    line: usize,
    fields: &[&str],
    allowed: &[usize],
) -> Result<Vec<T>> {
    if !allowed.contains(&fields.len()) {
        bail!(
            "line {line}: expected {allowed:?} fields, found {}",
            fields.len()
        );
    }
    fields
        .iter()
        .map(|f| {
            f.parse()
                .ok()
                .with_context(|| format!("line {line}: invalid number `{f}`"))
        })
        .collect()
}

pub fn parse_tripartite(text: &str) -> Result<(TripartiteGraph, TriangleMode)> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().context("empty graph file")?;
    let head: Vec<usize> = numbers(line, &header, &[2])?;
    let (n, m) = (head[0], head[1]);
    let (line, fields) = lines.next().context("missing part line")?;
    if fields.len() != n {
        bail!("line {line}: expected {n} parts, found {}", fields.len());
    }
    let part = fields
        .iter()
        .map(|f| match *f {
            "A" => Ok(Part::A),
            "B" => Ok(Part::B),
            "C" => Ok(Part::C),
            other => bail!("line {line}: unknown part `{other}`"),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::with_capacity(m);
    let mut weights: Vec<Option<Weight>> = Vec::with_capacity(m);
    for (line, fields) in lines.by_ref().take(m) {
        let v: Vec<i64> = numbers(line, &fields, &[2, 3])?;
        if v[0] < 0 || v[1] < 0 {
            bail!("line {line}: negative vertex");
        }
        edges.push((v[0] as usize, v[1] as usize));
        weights.push(v.get(2).copied());
    }
    if edges.len() != m {
        bail!("expected {m} edge lines, found {}", edges.len());
    }
    if let Some((line, _)) = lines.next() {
        bail!("line {line}: unexpected content after the edge list");
    }
    let mode = if weights.iter().all(Option::is_none) {
        TriangleMode::Unit
    } else if weights.iter().all(Option::is_some) {
        TriangleMode::Signed(weights.into_iter().flatten().collect())
    } else {
        bail!("either every edge or no edge carries a weight");
    };
    Ok((TripartiteGraph::new(part, edges)?, mode))
}

pub fn parse_patterned_host(text: &str) -> Result<PatternedHost> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().context("empty graph file")?;
    let head: Vec<usize> = numbers(line, &header, &[4])?;
    let (host_n, host_m, pattern_n, pattern_m) = (head[0], head[1], head[2], head[3]);
    let (line, fields) = lines.next().context("missing class line")?;
    let class: Vec<usize> = numbers(line, &fields, &[host_n])?;
    let mut pairs = |count: usize, what: &str| -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let (line, fields) = lines
                .next()
                .with_context(|| format!("missing {what} edge line"))?;
            let v: Vec<usize> = numbers(line, &fields, &[2])?;
            out.push((v[0], v[1]));
        }
        Ok(out)
    };
    let host_edges = pairs(host_m, "host")?;
    let pattern_edges = pairs(pattern_m, "pattern")?;
    if let Some((line, _)) = lines.next() {
        bail!("line {line}: unexpected content after the pattern edges");
    }
    Ok(PatternedHost {
        host_n,
        host_edges,
        pattern_n,
        pattern_edges,
        class,
    })
}
