//! SAT and graph-colouring instances as polynomial systems.

use super::CnfInstance;
use super::FormatError;
use crate::monomial::Monomial;
use crate::poly::{PolySystem, Polynomial, Term};
use crate::scalar::GaussianRational;

/// Variable `v` (1-based) becomes `z_v`. Each variable contributes
/// `z_v^2 − z_v`; each clause contributes the product of `1 − z_v` over its
/// positive literals and `z_v` over its negative ones. Common zeros are
/// exactly the satisfying 0/1 assignments.
pub fn encode_3sat(cnf: &CnfInstance) -> Result<PolySystem, FormatError> {
    let n = cnf.vars;
    let mut polys = Vec::with_capacity(n + cnf.clauses.len());
    for v in 0..n {
        let z = Polynomial::var(n, v);
        polys.push(z.mul(&z).and_then(|sq| sq.sub(&z)).expect("same arity"));
    }
    for clause in &cnf.clauses {
        let mut p = Polynomial::one(n);
        for &lit in clause {
            let v = lit.unsigned_abs() as usize;
            if v == 0 || v > n {
                return Err(FormatError::Encode(format!("literal {lit} out of range 1..={n}")));
            }
            let z = Polynomial::var(n, v - 1);
            let factor = if lit > 0 { Polynomial::one(n).sub(&z).expect("same arity") } else { z };
            p = p.mul(&factor).expect("same arity");
        }
        polys.push(p);
    }
    PolySystem::new(n, polys).map_err(|e| FormatError::Encode(e.to_string()))
}

/// An undirected graph on vertices `1..=vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Reads either DIMACS graph format (`p edge V E`, `e u v`) or plain `u v`
/// lines. Vertices are 1-based; in the plain form the vertex count is the
/// largest index seen. Lines starting with `c` or `#` are comments.
pub fn parse_edges(text: &str) -> Result<Graph, FormatError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut max_vertex = 0;
    let mut saw_plain = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let err = |msg: String| FormatError::Line { line, msg };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let vertex = |s: &str| -> Result<usize, FormatError> {
            match s.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(err(format!("{s:?} is not a vertex number (1-based)"))),
            }
        };
        match fields.as_slice() {
            ["p", "edge", v, e] | ["p", "col", v, e] => {
                if declared.is_some() || saw_plain || !edges.is_empty() {
                    return Err(err("problem line must come first and only once".into()));
                }
                let v = v.parse().map_err(|_| err(format!("bad vertex count {v:?}")))?;
                let e = e.parse().map_err(|_| err(format!("bad edge count {e:?}")))?;
                declared = Some((v, e));
            }
            ["e", u, v] if declared.is_some() => {
                let (u, v) = (vertex(u)?, vertex(v)?);
                let limit = declared.map_or(0, |d| d.0);
                if u > limit || v > limit {
                    return Err(err(format!("vertex out of range 1..={limit}")));
                }
                edges.push((u, v));
            }
            [u, v] if declared.is_none() => {
                saw_plain = true;
                let (u, v) = (vertex(u)?, vertex(v)?);
                max_vertex = max_vertex.max(u).max(v);
                edges.push((u, v));
            }
            _ => return Err(err(format!("unrecognised line {trimmed:?}"))),
        }
    }

    match declared {
        Some((vertices, count)) => {
            if edges.len() != count {
                return Err(FormatError::Line {
                    line: last_line.max(1),
                    msg: format!("header declares {count} edges, found {}", edges.len()),
                });
            }
            Ok(Graph { vertices, edges })
        }
        None if edges.is_empty() => {
            Err(FormatError::Line { line: last_line.max(1), msg: "no edges and no header".into() })
        }
        None => Ok(Graph { vertices: max_vertex, edges }),
    }
}

/// Vertex `v` becomes `z_v` with `z_v^k − 1`; edge `(u, v)` contributes
/// `Σ_{d<k} z_u^(k−1−d) z_v^d`, which vanishes on distinct k-th roots of
/// unity. A self-loop gives `k z_u^(k−1)` and so rules out every colouring.
pub fn encode_kcoloring(graph: &Graph, k: u32) -> Result<PolySystem, FormatError> {
    if k == 0 {
        return Err(FormatError::Encode("k must be at least 1".into()));
    }
    let n = graph.vertices;
    let mut polys = Vec::with_capacity(n + graph.edges.len());
    for v in 0..n {
        let mut e = vec![0; n];
        e[v] = k;
        let power = Polynomial::monomial(GaussianRational::one(), Monomial::new(e));
        polys.push(power.sub(&Polynomial::one(n)).expect("same arity"));
    }
    for &(u, v) in &graph.edges {
        if u == 0 || v == 0 || u > n || v > n {
            return Err(FormatError::Encode(format!("edge ({u}, {v}) out of range 1..={n}")));
        }
        let terms = (0..k).map(|d| {
            let mut e = vec![0; n];
            e[u - 1] += k - 1 - d;
            e[v - 1] += d;
            Term::new(GaussianRational::one(), Monomial::new(e))
        });
        polys.push(Polynomial::canonicalize(n, terms).expect("same arity"));
    }
    PolySystem::new(n, polys).map_err(|e| FormatError::Encode(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, j: usize) -> Polynomial {
        Polynomial::var(n, j)
    }

    #[test]
    fn contradiction_encoding() {
        let cnf = CnfInstance { vars: 1, clauses: vec![vec![1], vec![-1]] };
        let sys = encode_3sat(&cnf).unwrap();
        let one = Polynomial::one(1);
        assert_eq!(sys.polys()[0], z(1, 0).mul(&z(1, 0)).unwrap().sub(&z(1, 0)).unwrap());
        assert_eq!(sys.polys()[1], one.sub(&z(1, 0)).unwrap());
        assert_eq!(sys.polys()[2], z(1, 0));
    }

    #[test]
    fn clause_product_expands() {
        // (x1 ∨ ¬x2): (1 - z1) z2 = z2 - z1 z2
        let cnf = CnfInstance { vars: 2, clauses: vec![vec![1, -2]] };
        let sys = encode_3sat(&cnf).unwrap();
        assert_eq!(sys.polys()[2], z(2, 1).sub(&z(2, 0).mul(&z(2, 1)).unwrap()).unwrap());
    }

    #[test]
    fn triangle_edges() {
        let g = Graph { vertices: 3, edges: vec![(1, 2), (2, 3), (1, 3)] };
        let sys = encode_kcoloring(&g, 2).unwrap();
        assert_eq!(sys.len(), 6);
        assert_eq!(sys.polys()[3], z(3, 0).add(&z(3, 1)).unwrap());
    }

    #[test]
    fn single_vertex_one_colour() {
        let g = Graph { vertices: 1, edges: vec![] };
        let sys = encode_kcoloring(&g, 1).unwrap();
        assert_eq!(sys.polys(), &[z(1, 0).sub(&Polynomial::one(1)).unwrap()]);
    }

    #[test]
    fn self_loop_is_a_scaled_power() {
        let g = Graph { vertices: 1, edges: vec![(1, 1)] };
        let sys = encode_kcoloring(&g, 3).unwrap();
        let three = GaussianRational::from(3);
        assert_eq!(sys.polys()[1], z(1, 0).mul(&z(1, 0)).unwrap().scale(&three));
    }

    #[test]
    fn edge_formats() {
        assert_eq!(parse_edges("1 2\n2 3\n").unwrap(), Graph { vertices: 3, edges: vec![(1, 2), (2, 3)] });
        let g = parse_edges("c tri\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.vertices, 3);
        assert_eq!(g.edges.len(), 3);
        assert_eq!(parse_edges("p edge 1 0\n").unwrap(), Graph { vertices: 1, edges: vec![] });
        assert_eq!(parse_edges("0 1\n").unwrap_err().to_string(), "line 1: \"0\" is not a vertex number (1-based)");
        assert!(parse_edges("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_edges("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_edges("").is_err());
    }
}
