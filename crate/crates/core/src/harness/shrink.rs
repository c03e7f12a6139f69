//! Greedy shrinking of failing instances.

use super::checks::{colon_oracle_record, lower_bound_records};
use super::{
    verify_colon_bound, verify_main_theorem, Instance, Settings, Statement, Verdict,
    VerificationRecord,
};
use crate::even::EdgeProduct;
use crate::graph::Graph;

/// Whether re-running the check behind `record` on `(g, p)` still fails.
fn still_fails(
    record: &VerificationRecord,
    g: &Graph,
    p: Option<&EdgeProduct>,
    settings: &Settings,
) -> bool {
    let failing = |rs: &[VerificationRecord]| {
        rs.iter()
            .any(|r| r.statement == record.statement && r.pass == Verdict::Fail)
    };
    let s = record.s.unwrap_or(1);
    match (record.statement, p) {
        (Statement::Main, _) => verify_main_theorem(g, s, settings).is_ok_and(|r| failing(&r)),
        (Statement::LowerBound, _) => {
            g.edge_count() > 0 && lower_bound_records(g, s, settings).is_ok_and(|r| failing(&r))
        }
        (
            Statement::ColonBound | Statement::ColonGprimeVwc | Statement::ColonDecomposition,
            Some(p),
        ) => verify_colon_bound(g, std::slice::from_ref(p), settings).is_ok_and(|r| failing(&r)),
        (Statement::ColonOracle, Some(p)) => colon_oracle_record(p, settings).pass == Verdict::Fail,
        _ => false,
    }
}

fn without_edge(g: &Graph, drop: (usize, usize)) -> Graph {
    let mut h = Graph::with_vertices(g.names()).expect("names of g");
    for (i, j) in g.edges() {
        if (i, j) != drop {
            h.add_edge(g.name(i), g.name(j)).expect("vertices of g");
        }
    }
    h.remove_vertices(h.isolated_vertices())
}

/// Removes product factors and edges one at a time while `fails` keeps
/// holding, until no single removal does.
pub(crate) fn shrink_with(
    g: &Graph,
    p: Option<&EdgeProduct>,
    fails: impl Fn(&Graph, Option<&EdgeProduct>) -> bool,
) -> (Graph, Option<EdgeProduct>) {
    let mut g = g.clone();
    let mut p = p.cloned();
    'outer: loop {
        if let Some(cur) = &p {
            for i in 0..cur.s() {
                if let Some(q) = cur.without(i) {
                    if fails(&g, Some(&q)) {
                        p = Some(q);
                        continue 'outer;
                    }
                }
            }
        }
        for e in g.edges() {
            if let Some(cur) = &p {
                if cur.distinct().contains(&e) {
                    continue;
                }
            }
            let h = without_edge(&g, e);
            let q = match &p {
                Some(cur) => match cur.restricted_to(&h) {
                    Some(q) if q.s() == cur.s() => Some(q),
                    _ => continue,
                },
                None => None,
            };
            if fails(&h, q.as_ref()) {
                g = h;
                p = q;
                continue 'outer;
            }
        }
        return (g, p);
    }
}

/// Shrinks the instance behind a failing record. Statements whose check
/// cannot be re-run from the instance alone are returned unchanged.
pub fn shrink_failure(
    record: &VerificationRecord,
    instance: &Instance,
    settings: &Settings,
) -> (Graph, Option<EdgeProduct>) {
    shrink_with(&instance.graph, instance.product.as_ref(), |g, p| {
        still_fails(record, g, p, settings)
    })
}

/// Fixture text for a failing instance; the comment header is ignored by
/// the graph parser.
pub fn regression_fixture(
    statement: Statement,
    s: Option<u32>,
    g: &Graph,
    p: Option<&EdgeProduct>,
) -> String {
    let mut text = format!("# regression: {statement}\n");
    if let Some(s) = s {
        text.push_str(&format!("# s: {s}\n"));
    }
    if let Some(p) = p {
        text.push_str(&format!("# product: {p}\n"));
    }
    text.push_str(&g.to_text());
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn has_triangle(g: &Graph) -> bool {
        let n = g.vertex_count();
        (0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c))
            })
        })
    }

    #[test]
    fn shrinks_to_a_minimal_witness() {
        let (g, p) = shrink_with(&complete(5), None, |g, _| has_triangle(g));
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(p.is_none());
    }

    #[test]
    fn product_factors_are_kept_and_shrunk() {
        let g = complete(4);
        let p = EdgeProduct::parse(&g, "1-2,3-4,1-3").unwrap();
        // Fails while the product still uses edge 1-2.
        let (h, q) = shrink_with(&g, Some(&p), |h, q| {
            q.is_some_and(|q| {
                q.distinct()
                    .iter()
                    .any(|&(a, b)| h.name(a) == "1" && h.name(b) == "2")
            })
        });
        let q = q.unwrap();
        assert_eq!(q.to_string(), "1-2");
        assert_eq!(h.edge_count(), 1);
    }
}
