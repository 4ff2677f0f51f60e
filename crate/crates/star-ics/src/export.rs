//! File renderings: DOT graphs, JSON wire formats (with re-import for
//! trees), CSV distributions, and the text ledger and weight table.
//!
//! Output is byte-deterministic: nodes are emitted in scan order, arcs in
//! their stored sorted order, and big integers as decimal strings.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dist::{EsetDistribution, WeightDistribution};
use crate::error::Error;
use crate::lambda::{
    ArcKind, IndexString, LambdaArc, LambdaNode, LambdaTree, LedgerRow, WeightTable,
};
use crate::perm::Permutation;
use crate::threading::{GammaArcKind, GammaGraph};

pub fn tree_to_dot(tree: &LambdaTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph lambda_{} {{", tree.n());
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=box];");
    for node in tree.nodes() {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{} | {},{}\"];",
            node.id, node.id, node.weight, node.card
        );
    }
    for arc in tree.arcs() {
        let label = match arc.kind {
            ArcKind::Horizontal => format!("*{}", arc.indication),
            ArcKind::Vertical => format!("/{}", arc.indication),
        };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{label}\"];",
            arc.from, arc.to
        );
    }
    out.push_str("}\n");
    out
}

pub fn gamma_to_dot(gamma: &GammaGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph gamma_{} {{", gamma.n());
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=box];");
    for node in gamma.nodes() {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{} | {},{}\"];",
            node.id, node.id, node.weight, node.card
        );
    }
    for arc in gamma.arcs() {
        let (label, style) = match arc.kind {
            GammaArcKind::Horizontal => (format!("*{}", arc.indication), ""),
            GammaArcKind::Vertical => (format!("/{}", arc.indication), ""),
            GammaArcKind::Thread => (format!("/{}", arc.indication), ", style=dashed"),
        };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{label}\"{style}];",
            arc.from, arc.to
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    pruned: bool,
    nodes: Vec<NodeJson>,
    arcs: Vec<ArcJson>,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: Vec<usize>,
    w: usize,
    ell: usize,
    m: usize,
    a: usize,
    b: usize,
    card: String,
    sigma: Vec<u32>,
    ics: IcsJson,
}

#[derive(Serialize, Deserialize)]
struct IcsJson {
    c1: usize,
    others: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    from: Vec<usize>,
    to: Vec<usize>,
    kind: String,
}

fn node_json(node: &LambdaNode) -> NodeJson {
    NodeJson {
        id: node.id.indices().to_vec(),
        w: node.weight,
        ell: node.ell,
        m: node.mult,
        a: node.a,
        b: node.b,
        card: node.card.to_string(),
        sigma: node.sigma.entries().to_vec(),
        ics: IcsJson {
            c1: node.ics.one_cycle(),
            others: node.ics.others().to_vec(),
        },
    }
}

pub fn tree_to_json(tree: &LambdaTree) -> String {
    let doc = TreeJson {
        n: tree.n(),
        pruned: tree.is_pruned(),
        nodes: tree.nodes().map(node_json).collect(),
        arcs: tree
            .arcs()
            .iter()
            .map(|arc| ArcJson {
                from: arc.from.indices().to_vec(),
                to: arc.to.indices().to_vec(),
                kind: match arc.kind {
                    ArcKind::Horizontal => "horizontal".into(),
                    ArcKind::Vertical => "vertical".into(),
                },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Rebuilds a tree from its JSON export. Derived fields are recomputed and
/// cross-checked against the stored ones, so a tampered document fails to
/// import.
pub fn tree_from_json(text: &str) -> Result<LambdaTree, Error> {
    let doc: TreeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = doc.n;
    let mut nodes = std::collections::BTreeMap::new();
    for nj in &doc.nodes {
        let id = IndexString::new(nj.id.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let sigma = Permutation::from_entries(nj.sigma.clone())?;
        let card: BigUint = nj
            .card
            .parse()
            .map_err(|_| Error::Parse(format!("bad cardinality {:?}", nj.card)))?;
        if card.is_zero() {
            return Err(Error::Parse(format!("zero cardinality at {id}")));
        }
        let blank = id.last_t() <= 1;
        let mut ctuple = id.t_sequence();
        ctuple.sort_unstable();
        let node = LambdaNode {
            weight: id.last() + id.depth(),
            ell: id.last() + 1,
            mult: n - 1 - id.last(),
            a: id.last_t(),
            b: nj.b,
            card,
            sigma_closed: (!blank).then(|| sigma.close_one_cycle()),
            ctuple: (!blank).then_some(ctuple),
            ics: id
                .ics_key()
                .ok_or_else(|| Error::Parse(format!("{id} does not name a class")))?,
            sigma,
            id: id.clone(),
        };
        if node.weight != nj.w || node.ell != nj.ell || node.mult != nj.m || node.a != nj.a {
            return Err(Error::Parse(format!("inconsistent attributes at {id}")));
        }
        if node.ics.one_cycle() != nj.ics.c1 || node.ics.others() != nj.ics.others {
            return Err(Error::Parse(format!("inconsistent class key at {id}")));
        }
        nodes.insert(id, node);
    }
    let mut arcs = Vec::with_capacity(doc.arcs.len());
    for aj in &doc.arcs {
        let from = IndexString::new(aj.from.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let to = IndexString::new(aj.to.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let kind = match aj.kind.as_str() {
            "horizontal" => ArcKind::Horizontal,
            "vertical" => ArcKind::Vertical,
            other => return Err(Error::Parse(format!("unknown arc kind {other:?}"))),
        };
        if !nodes.contains_key(&from) || !nodes.contains_key(&to) {
            return Err(Error::Parse(format!("arc {from} -> {to} off the node set")));
        }
        let expected = match kind {
            ArcKind::Horizontal => from.horizontal_child(),
            ArcKind::Vertical => from.vertical_child(),
        };
        if expected != to {
            return Err(Error::Parse(format!(
                "arc {from} -> {to} is not a tree arc"
            )));
        }
        let indication = match kind {
            ArcKind::Horizontal => from.last() + 1,
            ArcKind::Vertical => from.class_divisor(),
        };
        arcs.push(LambdaArc {
            from,
            to,
            kind,
            indication,
        });
    }
    Ok(LambdaTree::from_parts(n, doc.pruned, nodes, arcs))
}

pub fn gamma_to_json(gamma: &GammaGraph) -> String {
    let doc = TreeJson {
        n: gamma.n(),
        pruned: true,
        nodes: gamma.nodes().map(node_json).collect(),
        arcs: gamma
            .arcs()
            .iter()
            .map(|arc| ArcJson {
                from: arc.from.indices().to_vec(),
                to: arc.to.indices().to_vec(),
                kind: match arc.kind {
                    GammaArcKind::Horizontal => "horizontal".into(),
                    GammaArcKind::Vertical => "vertical".into(),
                    GammaArcKind::Thread => "thread".into(),
                },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// CSV with header `omega,classes,vertices`, one row per weight.
pub fn dist_to_csv(classes: &WeightDistribution, vertices: &WeightDistribution) -> String {
    assert_eq!(classes.n, vertices.n, "distributions for different n");
    let mut out = String::from("omega,classes,vertices\n");
    for (omega, (c, v)) in classes.counts().iter().zip(vertices.counts()).enumerate() {
        let _ = writeln!(out, "{omega},{c},{v}");
    }
    out
}

#[derive(Serialize)]
struct DistJson {
    n: usize,
    rows: Vec<DistRowJson>,
}

#[derive(Serialize)]
struct DistRowJson {
    omega: usize,
    classes: String,
    vertices: String,
}

pub fn dist_to_json(classes: &WeightDistribution, vertices: &WeightDistribution) -> String {
    assert_eq!(classes.n, vertices.n, "distributions for different n");
    let rows = classes
        .counts()
        .iter()
        .zip(vertices.counts())
        .enumerate()
        .map(|(omega, (c, v))| DistRowJson {
            omega,
            classes: c.to_string(),
            vertices: v.to_string(),
        })
        .collect();
    serde_json::to_string_pretty(&DistJson { n: classes.n, rows }).expect("serializable")
}

pub fn eset_to_csv(e: &EsetDistribution) -> String {
    let mut out = String::from("omega,count\n");
    for (omega, c) in e.counts().iter().enumerate() {
        let _ = writeln!(out, "{omega},{c}");
    }
    out
}

#[derive(Serialize)]
struct EsetJson {
    n: usize,
    i: usize,
    rows: Vec<EsetRowJson>,
}

#[derive(Serialize)]
struct EsetRowJson {
    omega: usize,
    count: String,
}

pub fn eset_to_json(e: &EsetDistribution) -> String {
    let rows = e
        .counts()
        .iter()
        .enumerate()
        .map(|(omega, c)| EsetRowJson {
            omega,
            count: c.to_string(),
        })
        .collect();
    serde_json::to_string_pretty(&EsetJson {
        n: e.n,
        i: e.symbol,
        rows,
    })
    .expect("serializable")
}

fn fmt_perm_with_cycles(p: &Permutation) -> String {
    let cycles = p.cycle_structure();
    if cycles.is_empty() {
        p.ledger_shorthand()
    } else {
        format!("{}{}", p.ledger_shorthand(), cycles)
    }
}

fn fmt_tuple(tuple: &[usize]) -> String {
    if tuple.iter().all(|&x| x <= 15) {
        tuple
            .iter()
            .map(|&x| char::from_digit(x as u32, 16).unwrap())
            .collect()
    } else {
        let parts: Vec<String> = tuple.iter().map(|x| x.to_string()).collect();
        parts.join(",")
    }
}

fn fmt_ba(b: usize, a: usize) -> String {
    if b <= 15 && a <= 15 {
        format!(
            "{}{}",
            char::from_digit(b as u32, 16).unwrap(),
            char::from_digit(a as u32, 16).unwrap()
        )
    } else {
        format!("{b},{a}")
    }
}

/// The scan listing as aligned text columns:
/// `u(i,w)  sigma(pi)  ell  sigma[u](pi[u])  C(u)  b a`.
pub fn ledger_to_text(rows: &[LedgerRow]) -> String {
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|row| {
            [
                format!("u({},{})", row.id.compact(), row.weight),
                fmt_perm_with_cycles(&row.sigma),
                row.ell.to_string(),
                match (&row.sigma_closed, &row.pi_closed) {
                    (Some(p), Some(_)) => fmt_perm_with_cycles(p),
                    _ => String::new(),
                },
                row.ctuple.as_deref().map(fmt_tuple).unwrap_or_default(),
                fmt_ba(row.b, row.a),
            ]
        })
        .collect();
    let headers = [
        "u(i,w)",
        "Sigma(u) Pi(u)",
        "l",
        "Sigma[u] Pi[u]",
        "C(u)",
        "ba",
    ];
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, row: &[String]| {
        for (i, (cell, width)) in row.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{cell:<width$}");
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    let header_row: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    emit(&mut out, &header_row);
    for row in &cells {
        emit(&mut out, row);
    }
    out
}

#[derive(Serialize)]
struct LedgerRowJson {
    id: Vec<usize>,
    w: usize,
    sigma: Vec<u32>,
    ell: usize,
    sigma_closed: Option<Vec<u32>>,
    c: Option<Vec<usize>>,
    b: usize,
    a: usize,
}

pub fn ledger_to_json(rows: &[LedgerRow]) -> String {
    let rows: Vec<LedgerRowJson> = rows
        .iter()
        .map(|row| LedgerRowJson {
            id: row.id.indices().to_vec(),
            w: row.weight,
            sigma: row.sigma.entries().to_vec(),
            ell: row.ell,
            sigma_closed: row.sigma_closed.as_ref().map(|p| p.entries().to_vec()),
            c: row.ctuple.clone(),
            b: row.b,
            a: row.a,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("serializable")
}

/// The weight table as a text grid: one column per weight, one row per
/// mhdp, depth blocks separated by blank lines.
pub fn table_to_text(table: &WeightTable) -> String {
    let columns = table.diameter + 1;
    let mut widths: Vec<usize> = (0..columns).map(|w| w.to_string().len()).collect();
    let rendered: Vec<(usize, usize, Vec<String>)> = table
        .rows
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.strings.iter().map(|s| s.compact()).collect();
            for (k, cell) in cells.iter().enumerate() {
                let col = row.start_weight + k;
                widths[col] = widths[col].max(cell.len());
            }
            (row.depth, row.start_weight, cells)
        })
        .collect();

    let mut out = String::new();
    for (col, width) in widths.iter().enumerate() {
        if col > 0 {
            out.push_str("  ");
        }
        let _ = write!(out, "{col:<width$}");
    }
    out.push('\n');
    let mut prev_depth = 0;
    for (depth, start, cells) in &rendered {
        if *depth != prev_depth {
            out.push('\n');
            prev_depth = *depth;
        }
        let mut line = String::new();
        for (col, width) in widths.iter().enumerate() {
            if col > 0 {
                line.push_str("  ");
            }
            let cell = if col >= *start && col - start < cells.len() {
                cells[col - start].as_str()
            } else {
                ""
            };
            let _ = write!(line, "{cell:<width$}");
        }
        while line.ends_with(' ') {
            line.pop();
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct TableJson {
    n: usize,
    diameter: usize,
    rows: Vec<TableRowJson>,
}

#[derive(Serialize)]
struct TableRowJson {
    depth: usize,
    start_weight: usize,
    strings: Vec<Vec<usize>>,
}

pub fn table_to_json(table: &WeightTable) -> String {
    let rows = table
        .rows
        .iter()
        .map(|row| TableRowJson {
            depth: row.depth,
            start_weight: row.start_weight,
            strings: row.strings.iter().map(|s| s.indices().to_vec()).collect(),
        })
        .collect();
    serde_json::to_string_pretty(&TableJson {
        n: table.n,
        diameter: table.diameter,
        rows,
    })
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{generate_pruned, generate_unpruned, ledger, table_t};
    use crate::threading::build_gamma;

    #[test]
    fn tree_json_round_trip() {
        for n in [2, 4, 7, 9] {
            let tree = generate_pruned(n).unwrap();
            let text = tree_to_json(&tree);
            let back = tree_from_json(&text).unwrap();
            assert_eq!(back, tree, "n={n}");
        }
        let tree = generate_unpruned(7).unwrap();
        let back = tree_from_json(&tree_to_json(&tree)).unwrap();
        assert_eq!(back, tree);
    }

    #[test]
    fn tree_json_rejects_tampering() {
        let tree = generate_pruned(4).unwrap();
        let text = tree_to_json(&tree).replace("\"w\": 4", "\"w\": 9");
        assert!(tree_from_json(&text).is_err());
    }

    #[test]
    fn gamma_json_contains_threads() {
        let gamma = build_gamma(9).unwrap();
        let text = gamma_to_json(&gamma);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let arcs = value["arcs"].as_array().unwrap();
        let thread = arcs
            .iter()
            .find(|arc| arc["kind"] == "thread" && arc["from"] == serde_json::json!([3, 5]))
            .expect("thread from 35");
        assert_eq!(thread["to"], serde_json::json!([2, 5, 5]));
    }

    #[test]
    fn dot_output_shapes() {
        let tree = generate_pruned(4).unwrap();
        let dot = tree_to_dot(&tree);
        assert!(dot.contains("\"2.2\" [label=\"2.2 | 3,3\"];"));
        assert!(dot.contains("\"2\" -> \"2.2\" [label=\"/2\"];"));
        let gamma = build_gamma(9).unwrap();
        let dot = gamma_to_dot(&gamma);
        assert!(dot.contains("\"3.5\" -> \"2.5.5\" [label=\"/2\", style=dashed];"));
    }

    #[test]
    fn dist_csv_shape() {
        let classes = crate::dist::class_weight_distribution(5).unwrap();
        let vertices = crate::dist::vertex_weight_distribution(5).unwrap();
        let csv = dist_to_csv(&classes, &vertices);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "omega,classes,vertices");
        assert_eq!(lines.last().unwrap(), &"6,1,3");
    }

    #[test]
    fn ledger_text_mirrors_listing_fields() {
        let rows = ledger(9).unwrap();
        let text = ledger_to_text(&rows);
        assert!(text.contains("u(35,6)"));
        let line = text.lines().find(|l| l.starts_with("u(35,6)")).unwrap();
        assert!(line.contains("642315"));
        assert!(line.contains("142365"));
        assert!(line.contains("32")); // C(u) in t-order
        assert!(line.ends_with("02")); // b a
    }

    #[test]
    fn table_text_has_overflow_column() {
        let table = table_t(11).unwrap();
        let text = table_to_text(&table);
        assert!(text.contains("2468aa"));
        let sets = table.column_sets();
        assert_eq!(sets[15].len(), 1);
    }
}
