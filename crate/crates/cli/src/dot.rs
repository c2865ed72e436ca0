//! Graphviz DOT export of graph pairs, plus a parser for the emitted subset
//! so files can be read back and round-tripped.

use std::fmt::Write as _;

use upp2_core::GraphPair;

use crate::error::{CliError, CliResult};

/// One digraph block per structure: nodes 1..k in order, then edges sorted
/// by (source, target), coloured red, blue, or "red:blue" when both graphs
/// carry the edge.
pub fn render(name: &str, pair: &GraphPair) -> String {
    let k = pair.node_count();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  node [shape=circle];");
    for v in 0..k {
        let _ = writeln!(out, "  {};", v + 1);
    }
    for u in 0..k {
        for v in 0..k {
            let red = pair.red().has_edge(u, v);
            let blue = pair.blue().has_edge(u, v);
            let colour = match (red, blue) {
                (true, true) => "red:blue",
                (true, false) => "red",
                (false, true) => "blue",
                (false, false) => continue,
            };
            let _ = writeln!(out, "  {} -> {} [color=\"{colour}\"];", u + 1, v + 1);
        }
    }
    let _ = writeln!(out, "}}");
    out
}

type Block = (String, Vec<usize>, Vec<(usize, usize, String)>);

/// Parses the subset of DOT emitted by [`render`].
pub fn parse(text: &str, name: &str) -> CliResult<Vec<(String, GraphPair)>> {
    let mut out = Vec::new();
    let mut current: Option<Block> = None;
    for (li, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| CliError::parse(name, li + 1, 1, msg);
        if line.is_empty() || line.starts_with("node ") || line.starts_with("node[") {
            continue;
        }
        if let Some(rest) = line.strip_prefix("digraph ") {
            let graph_name = rest.trim_end_matches('{').trim();
            if current.is_some() {
                return Err(err("nested digraph"));
            }
            current = Some((graph_name.to_string(), Vec::new(), Vec::new()));
            continue;
        }
        if line == "}" {
            let (graph_name, nodes, edges) =
                current.take().ok_or_else(|| err("unmatched closing brace"))?;
            let k = nodes.len();
            let mut pair = GraphPair::empty(k);
            for (u, v, colour) in edges {
                if u == 0 || u > k || v == 0 || v > k {
                    return Err(err("edge endpoint outside declared nodes"));
                }
                for part in colour.split(':') {
                    match part {
                        "red" => pair.red_mut().add_edge(u - 1, v - 1),
                        "blue" => pair.blue_mut().add_edge(u - 1, v - 1),
                        other => {
                            return Err(CliError::parse(
                                name,
                                li + 1,
                                1,
                                format!("unknown colour {other:?}"),
                            ))
                        }
                    }
                }
            }
            out.push((graph_name, pair));
            continue;
        }
        let Some((_, nodes, edges)) = current.as_mut() else {
            return Err(err("statement outside a digraph block"));
        };
        let stmt = line.trim_end_matches(';');
        if let Some((ends, attrs)) = stmt.split_once('[') {
            let (u, v) = ends
                .split_once("->")
                .ok_or_else(|| err("expected an edge statement"))?;
            let u: usize = u.trim().parse().map_err(|_| err("bad source node"))?;
            let v: usize = v.trim().parse().map_err(|_| err("bad target node"))?;
            let attrs = attrs.trim_end_matches(']');
            let colour = attrs
                .split(',')
                .find_map(|kv| {
                    let (key, value) = kv.split_once('=')?;
                    (key.trim() == "color").then(|| value.trim().trim_matches('"').to_string())
                })
                .ok_or_else(|| err("edge without a color attribute"))?;
            edges.push((u, v, colour));
        } else {
            let v: usize = stmt.trim().parse().map_err(|_| err("bad node statement"))?;
            nodes.push(v);
        }
    }
    if current.is_some() {
        return Err(CliError::parse(name, text.lines().count(), 1, "unclosed digraph"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use upp2_core::embed::prs_to_graph_pair;
    use upp2_core::rect::product_of_points;

    #[test]
    fn one_by_one_structure_renders_loops() {
        let prs = product_of_points(1, 1).unwrap();
        let pair = prs_to_graph_pair(&prs);
        let text = render("s0", &pair);
        assert!(text.contains("1 -> 1 [color=\"red:blue\"]"));
        let parsed = parse(&text, "t").unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0].0, "s0");
        assert_eq!(&parsed[0].1, &pair);
    }

    #[test]
    fn round_trip_of_product_structure() {
        let prs = product_of_points(2, 3).unwrap();
        let pair = prs_to_graph_pair(&prs);
        let text = render("s1", &pair);
        let parsed = parse(&text, "t").unwrap();
        assert_eq!(&parsed[0].1, &pair);
    }

    #[test]
    fn multiple_blocks_parse() {
        let p1 = prs_to_graph_pair(&product_of_points(1, 2).unwrap());
        let p2 = prs_to_graph_pair(&product_of_points(2, 1).unwrap());
        let text = format!("{}{}", render("a", &p1), render("b", &p2));
        let parsed = parse(&text, "t").unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(&parsed[0].1, &p1);
        assert_eq!(&parsed[1].1, &p2);
    }

    #[test]
    fn parse_rejects_unknown_colour() {
        let text = "digraph x {\n  1;\n  1 -> 1 [color=\"green\"];\n}\n";
        assert!(parse(text, "t").is_err());
    }
}
