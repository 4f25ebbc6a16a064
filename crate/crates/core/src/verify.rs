//! Exhaustive checks of the finite case analyses behind the fast engines.
//!
//! Each checker walks a whole pattern universe with the production
//! predicates from [`crate::patterns`] and reports the patterns that break
//! the claimed property. An empty violation list means the claim holds.

use serde::Serialize;

use crate::patterns::{enumerate_patterns, interactions, Pattern, PatternError, Universe};

/// Smallest and largest `k` the interaction and relaxation checks accept.
pub const MIN_CHECK_K: usize = 6;
pub const MAX_CHECK_K: usize = 8;

/// Outcome of one exhaustive check. Deterministic: patterns are visited in
/// lexicographic order of their mate arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub check: &'static str,
    pub k: usize,
    /// Patterns enumerated.
    pub total: usize,
    pub feasible: usize,
    pub irreducible: usize,
    /// Patterns meeting the check's precondition.
    pub matching: usize,
    /// Offending patterns in text form.
    pub violations: Vec<String>,
}

impl LemmaReport {
    fn new(check: &'static str, k: usize) -> Self {
        Self {
            check,
            k,
            total: 0,
            feasible: 0,
            irreducible: 0,
            matching: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn check_k(k: usize) -> Result<(), PatternError> {
    if (MIN_CHECK_K..=MAX_CHECK_K).contains(&k) {
        Ok(())
    } else {
        Err(PatternError::KOutOfRange(k))
    }
}

/// Calls `visit` with every feasible irreducible admissible pattern and its
/// component slot sets, counting along the way.
fn walk_irreducible(
    report: &mut LemmaReport,
    universe: Universe,
    mut visit: impl FnMut(&Pattern, &[Vec<usize>], &mut LemmaReport),
) -> Result<(), PatternError> {
    for p in enumerate_patterns(report.k, universe)? {
        report.total += 1;
        if !p.is_feasible() {
            continue;
        }
        report.feasible += 1;
        if p.is_reducible() {
            continue;
        }
        report.irreducible += 1;
        let comps = p.component_slots();
        visit(&p, &comps, report);
    }
    Ok(())
}

/// No feasible irreducible pattern has two 2-swap components that interact
/// at least twice. Matching patterns are those with two or more 2-swaps.
pub fn check_lemma_interactions(k: usize) -> Result<LemmaReport, PatternError> {
    check_k(k)?;
    let mut report = LemmaReport::new("interactions", k);
    walk_irreducible(&mut report, Universe::Admissible, |p, comps, report| {
        let pairs: Vec<&Vec<usize>> = comps.iter().filter(|c| c.len() == 2).collect();
        if pairs.len() < 2 {
            return;
        }
        report.matching += 1;
        for (a, x) in pairs.iter().enumerate() {
            for y in &pairs[a + 1..] {
                if interactions(k, x, y).expect("components are disjoint") >= 2 {
                    report.violations.push(p.to_string());
                    return;
                }
            }
        }
    })?;
    Ok(report)
}

/// For a feasible irreducible pattern made of three sequential swaps, two of
/// them 2-swaps with exactly one interaction at slot pair `(i, i + 1)`,
/// exchanging slots `i` and `i + 1` gives a feasible or reducible pattern.
pub fn check_lemma_relax1(k: usize) -> Result<LemmaReport, PatternError> {
    check_k(k)?;
    let mut report = LemmaReport::new("relax1", k);
    walk_irreducible(&mut report, Universe::Admissible, |p, comps, report| {
        if comps.len() != 3 {
            return;
        }
        let mut counted = false;
        for a in 0..3 {
            for b in a + 1..3 {
                let (x, y) = (&comps[a], &comps[b]);
                if x.len() != 2 || y.len() != 2 {
                    continue;
                }
                let links: Vec<usize> = (0..k - 1)
                    .filter(|&s| {
                        (x.contains(&s) && y.contains(&(s + 1)))
                            || (y.contains(&s) && x.contains(&(s + 1)))
                    })
                    .collect();
                if links.len() != 1 {
                    continue;
                }
                if !counted {
                    report.matching += 1;
                    counted = true;
                }
                let q = p.swap_adjacent(links[0]);
                if !(q.is_feasible() || q.is_reducible()) {
                    report
                        .violations
                        .push(format!("{p} at slot {}", links[0] + 1));
                }
            }
        }
    })?;
    Ok(report)
}

/// 8-swap patterns made of a 2-swap `{i, j}` and two 3-swaps `A`, `B` with
/// `i` wrapped by `A` and `j` wrapped by `B`: for `(i, A)` or `(j, B)`, the
/// slots two away from the wrapped slot lie outside its wrapper, and
/// exchanging the wrapped slot with either neighbour gives a feasible or
/// reducible pattern.
///
/// Enumerates every feasible matching with own-edge pairs allowed, the
/// universe whose size (645120) the original check reports.
pub fn check_lemma_relax2() -> Result<LemmaReport, PatternError> {
    let k = 8;
    let mut report = LemmaReport::new("relax2", k);
    walk_irreducible(
        &mut report,
        Universe::AppendixCompatible,
        |p, comps, report| {
            let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
            sizes.sort_unstable();
            if sizes != [2, 3, 3] {
                return;
            }
            let x = comps.iter().find(|c| c.len() == 2).expect("one 2-swap");
            let (i, j) = (x[0], x[1]);
            let wrapper = |a: usize| {
                comps.iter().find(|c| {
                    c.len() == 3 && a >= 1 && c.contains(&(a - 1)) && c.contains(&(a + 1))
                })
            };
            let (Some(wi), Some(wj)) = (wrapper(i), wrapper(j)) else {
                return;
            };
            if wi == wj {
                return;
            }
            report.matching += 1;
            let holds = |a: usize, wrap: &Vec<usize>| {
                let clear = |t: Option<usize>| t.is_none_or(|t| !wrap.contains(&t));
                let ok = |q: Pattern| q.is_feasible() || q.is_reducible();
                clear(a.checked_sub(2))
                    && clear(Some(a + 2))
                    && ok(p.swap_adjacent(a))
                    && ok(p.swap_adjacent(a - 1))
            };
            if !(holds(i, wi) || holds(j, wj)) {
                report.violations.push(p.to_string());
            }
        },
    )?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_outside_range_is_rejected() {
        assert!(check_lemma_interactions(5).is_err());
        assert!(check_lemma_relax1(9).is_err());
    }

    #[test]
    fn k6_checks_hold_and_are_deterministic() {
        let a = check_lemma_interactions(6).unwrap();
        assert!(a.passed());
        assert_eq!(a.irreducible, 1348 + 408);
        assert_eq!(a.to_json(), check_lemma_interactions(6).unwrap().to_json());
        let b = check_lemma_relax1(6).unwrap();
        assert!(b.passed());
        // Every 3-component pattern is reducible for k = 6.
        assert_eq!(b.matching, 0);
    }
}
