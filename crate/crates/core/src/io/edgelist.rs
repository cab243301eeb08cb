use std::collections::HashMap;

use crate::distance::Distance;
use crate::error::{Error, Result};
use crate::metric::WeightedDigraph;

use super::parse_value;

/// Whitespace-separated `u v w` lines; `#` starts a comment. A line with
/// only `u v` has weight 1. Vertex ids follow first appearance, duplicate
/// arcs keep their smallest weight and self-loops are dropped.
pub fn parse_edgelist_str<T: Distance>(text: &str) -> Result<WeightedDigraph<T>> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut weights: HashMap<(usize, usize), T> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut id = |token: &str, labels: &mut Vec<String>| {
        *ids.entry(token.to_string()).or_insert_with(|| {
            labels.push(token.to_string());
            labels.len() - 1
        })
    };

    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let ctx = || format!("edge list line {}", no + 1);
        let w = match tokens.len() {
            2 => parse_value::<T>("1", ctx)?,
            3 => parse_value::<T>(tokens[2], ctx)?,
            len => return Err(Error::parse(ctx(), format!("expected `u v w`, got {len} fields"))),
        };
        let u = id(tokens[0], &mut labels);
        let v = id(tokens[1], &mut labels);
        if u == v {
            continue;
        }
        weights
            .entry((u, v))
            .and_modify(|x| *x = (*x).min(w))
            .or_insert_with(|| {
                order.push((u, v));
                w
            });
    }
    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut g = WeightedDigraph::new(labels.len());
    for (u, v) in order {
        g.add_arc(u, v, weights[&(u, v)]);
    }
    g.labels = Some(labels);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::Real;

    #[test]
    fn two_arcs() {
        let g = parse_edgelist_str::<u64>("a b 1\nb a 2").unwrap();
        assert_eq!(g.n, 2);
        assert_eq!(g.arcs, vec![(0, 1, 1), (1, 0, 2)]);
        assert_eq!(g.labels.unwrap(), vec!["a", "b"]);
    }

    #[test]
    fn comments_duplicates_and_unweighted() {
        let text = "# header\n\nx y 5 # trailing\ny z\nx y 3\nz z 4\n";
        let g = parse_edgelist_str::<u64>(text).unwrap();
        assert_eq!(g.arcs, vec![(0, 1, 3), (1, 2, 1)]);
        assert_eq!(g.n, 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_edgelist_str::<u64>("# nothing\n"), Err(Error::EmptyGraph)));
        let e = parse_edgelist_str::<u64>("a b 1\nb c -2\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = parse_edgelist_str::<u64>("a b 1 9\n").unwrap_err();
        assert!(e.to_string().contains("line 1"));
    }

    #[test]
    fn rescaled_signed_weights_are_accepted() {
        let g = parse_edgelist_str::<Real>("1 2 0.0\n2 1 20\n3 1 12.5\n").unwrap();
        assert_eq!(g.arcs.len(), 3);
        assert!(matches!(parse_edgelist_str::<u64>("1 2 12.5"), Err(Error::BadToken { .. })));
    }
}
