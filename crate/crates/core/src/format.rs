//! Plain-text formats for every instance and certificate type. Blank lines and
//! lines starting with `#` are ignored by all readers; line numbers in errors
//! are 1-based.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::circle::ChordDiagram;
use crate::decomposition::{Separation, TreeDecomposition};
use crate::error::{Error, Result};
use crate::geometry::{Point, StringDiagram, Q};
use crate::graph::{CyclicOrder, Graph};
use crate::minors::MinorModel;
use crate::ordered::OrderedGraph;
use crate::perturbation::Gf2Matrix;
use crate::vertex_minor::{Crossing, MarkedDrawing, VmStep};

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(s: &'a str) -> Lines<'a> {
        let it: Box<dyn Iterator<Item = (usize, Vec<&'a str>)>> = Box::new(
            s.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
                .filter(|(_, t)| !t.is_empty() && !t[0].starts_with('#')),
        );
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let r = self.inner.next();
        if let Some((l, _)) = &r {
            self.last = *l;
        }
        r
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.last;
        self.next().ok_or_else(|| Error::parse(last + 1, format!("unexpected end of input, expected {what}")))
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner.peek().map(|(_, t)| t[0])
    }

    fn finish(mut self) -> Result<()> {
        match self.next() {
            Some((l, t)) => Err(Error::parse(l, format!("unexpected line starting with {:?}", t[0]))),
            None => Ok(()),
        }
    }
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::parse(line, format!("bad number {tok:?}")))
}

fn nums(line: usize, toks: &[&str]) -> Result<Vec<usize>> {
    toks.iter().map(|t| num(line, t)).collect()
}

fn keyword<'a>(line: usize, toks: &[&'a str], kw: &str, min_len: usize) -> Result<()> {
    if toks[0] != kw {
        return Err(Error::parse(line, format!("expected {kw:?}, found {:?}", toks[0])));
    }
    if toks.len() < min_len {
        return Err(Error::parse(line, format!("{kw:?} line needs at least {} fields", min_len - 1)));
    }
    Ok(())
}

fn join(vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn read_graph(lines: &mut Lines) -> Result<Graph> {
    let (l, h) = lines.expect("header \"n m\"")?;
    if h.len() != 2 {
        return Err(Error::parse(l, "header must be \"n m\""));
    }
    let (n, m): (usize, usize) = (num(l, h[0])?, num(l, h[1])?);
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for i in 0..m {
        let (l, e) = lines.expect(&format!("edge {} of {m}", i + 1))?;
        if e.len() != 2 {
            return Err(Error::parse(l, "edge line must be \"u v\""));
        }
        let (u, v): (usize, usize) = (num(l, e[0])?, num(l, e[1])?);
        if u >= n || v >= n || u == v {
            return Err(Error::parse(l, format!("edge {u} {v} invalid for n = {n}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(l, format!("edge {u} {v} repeated")));
        }
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

fn write_graph_into(out: &mut String, g: &Graph) {
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
}

/// `n m` then one `u v` line per edge.
pub fn parse_graph(s: &str) -> Result<Graph> {
    let mut lines = Lines::new(s);
    let g = read_graph(&mut lines)?;
    lines.finish()?;
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    write_graph_into(&mut out, g);
    out
}

/// One line of distinct labels.
pub fn parse_cyclic_order(s: &str) -> Result<CyclicOrder> {
    let mut lines = Lines::new(s);
    let (l, t) = lines.expect("a line of labels")?;
    lines.finish()?;
    CyclicOrder::new(nums(l, &t)?).map_err(|e| Error::parse(l, e.to_string()))
}

pub fn write_cyclic_order(c: &CyclicOrder) -> String {
    format!("{}\n", join(c.elements().iter().copied()))
}

/// `td <#bags> <width+1> <n>`, then `b <id> <v...>` per bag (ids from 1) and
/// `t <i> <j>` per tree edge.
pub fn parse_td(s: &str) -> Result<(TreeDecomposition, usize)> {
    let mut lines = Lines::new(s);
    let (l, h) = lines.expect("td header")?;
    keyword(l, &h, "td", 4)?;
    let (nb, w1, n): (usize, usize, usize) = (num(l, h[1])?, num(l, h[2])?, num(l, h[3])?);
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; nb];
    let mut edges = Vec::new();
    while let Some((l, t)) = lines.next() {
        match t[0] {
            "b" if t.len() >= 2 => {
                let id: usize = num(l, t[1])?;
                if id == 0 || id > nb || bags[id - 1].is_some() {
                    return Err(Error::parse(l, format!("bag id {id} out of range or repeated")));
                }
                let vs = nums(l, &t[2..])?;
                if vs.iter().any(|&v| v >= n) {
                    return Err(Error::parse(l, format!("bag {id} names a vertex outside 0..{n}")));
                }
                if vs.len() > w1 {
                    return Err(Error::parse(l, format!("bag {id} has {} vertices, header allows {w1}", vs.len())));
                }
                bags[id - 1] = Some(vs);
            }
            "t" if t.len() == 3 => {
                let (i, j): (usize, usize) = (num(l, t[1])?, num(l, t[2])?);
                if i == 0 || j == 0 || i > nb || j > nb || i == j {
                    return Err(Error::parse(l, format!("tree edge {i} {j} invalid")));
                }
                edges.push((i - 1, j - 1));
            }
            other => return Err(Error::parse(l, format!("unexpected line starting with {other:?}"))),
        }
    }
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(lines.last, format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    let tree = Graph::new(nb, edges).map_err(|e| Error::parse(lines.last, e.to_string()))?;
    Ok((TreeDecomposition::new(tree, bags), n))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let width1 = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("td {} {} {}\n", td.bags.len(), width1, n);
    for (i, b) in td.bags.iter().enumerate() {
        let _ = writeln!(out, "b {} {}", i + 1, join(b.iter().copied()));
    }
    for (i, j) in td.tree.edges() {
        let _ = writeln!(out, "t {} {}", i + 1, j + 1);
    }
    out.replace(" \n", "\n")
}

/// `model <#sets>` then `s <pattern-vertex> <hosts...>`. Returns the branch
/// sets indexed by pattern vertex; the pattern itself lives elsewhere.
pub fn parse_branch_sets(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = Lines::new(s);
    let (l, h) = lines.expect("model header")?;
    keyword(l, &h, "model", 2)?;
    let k: usize = num(l, h[1])?;
    let mut sets: Vec<Option<Vec<usize>>> = vec![None; k];
    for _ in 0..k {
        let (l, t) = lines.expect("branch set line")?;
        keyword(l, &t, "s", 2)?;
        let p: usize = num(l, t[1])?;
        if p >= k || sets[p].is_some() {
            return Err(Error::parse(l, format!("pattern vertex {p} out of range or repeated")));
        }
        sets[p] = Some(nums(l, &t[2..])?);
    }
    lines.finish()?;
    Ok(sets.into_iter().map(|s| s.expect("k distinct lines fill k slots")).collect())
}

pub fn parse_model(s: &str, pattern: Graph) -> Result<MinorModel> {
    let sets = parse_branch_sets(s)?;
    if sets.len() != pattern.n() {
        return Err(Error::parse(1, format!("{} branch sets for a pattern on {} vertices", sets.len(), pattern.n())));
    }
    Ok(MinorModel::new(pattern, sets))
}

pub fn write_model(m: &MinorModel) -> String {
    let mut out = format!("model {}\n", m.branch_sets.len());
    for (p, set) in m.branch_sets.iter().enumerate() {
        let _ = writeln!(out, "s {p} {}", join(set.iter().copied()));
    }
    out.replace(" \n", "\n")
}

/// `lc <v>` / `del <v>` lines.
pub fn parse_vm_steps(s: &str) -> Result<Vec<VmStep>> {
    let mut lines = Lines::new(s);
    let mut steps = Vec::new();
    while let Some((l, t)) = lines.next() {
        if t.len() != 2 {
            return Err(Error::parse(l, "step line must be \"lc v\" or \"del v\""));
        }
        let v = num(l, t[1])?;
        steps.push(match t[0] {
            "lc" => VmStep::LocalComplement(v),
            "del" => VmStep::Delete(v),
            other => return Err(Error::parse(l, format!("unknown step {other:?}"))),
        });
    }
    Ok(steps)
}

pub fn write_vm_steps(steps: &[VmStep]) -> String {
    steps
        .iter()
        .map(|s| match s {
            VmStep::LocalComplement(v) => format!("lc {v}\n"),
            VmStep::Delete(v) => format!("del {v}\n"),
        })
        .collect()
}

/// Graph lines, then `x <c> <c1> <c2> <c3> <c4>` per crossing vertex with its
/// neighbours in rotation order.
pub fn parse_drawing(s: &str) -> Result<MarkedDrawing> {
    let mut lines = Lines::new(s);
    let graph = read_graph(&mut lines)?;
    let mut crossings = Vec::new();
    while let Some((l, t)) = lines.next() {
        keyword(l, &t, "x", 6)?;
        if t.len() != 6 {
            return Err(Error::parse(l, "crossing line must be \"x c c1 c2 c3 c4\""));
        }
        let v = nums(l, &t[1..])?;
        crossings.push(Crossing { vertex: v[0], rotation: [v[1], v[2], v[3], v[4]] });
    }
    let d = MarkedDrawing { graph, crossings };
    d.validate()?;
    Ok(d)
}

pub fn write_drawing(d: &MarkedDrawing) -> String {
    let mut out = write_graph(&d.graph);
    for c in &d.crossings {
        let _ = writeln!(out, "x {} {}", c.vertex, join(c.rotation));
    }
    out
}

/// Graph lines, then `order v0 v1 ... v_{n-1}`.
pub fn parse_ordered(s: &str) -> Result<OrderedGraph> {
    let mut lines = Lines::new(s);
    let graph = read_graph(&mut lines)?;
    let (l, t) = lines.expect("order line")?;
    keyword(l, &t, "order", 1)?;
    let order = nums(l, &t[1..])?;
    lines.finish()?;
    OrderedGraph::new(graph, order).map_err(|e| Error::parse(l, e.to_string()))
}

pub fn write_ordered(og: &OrderedGraph) -> String {
    let mut out = write_graph(&og.graph);
    let _ = writeln!(out, "order {}", join(og.order().iter().copied()));
    out.replace("order \n", "order\n")
}

/// `string <id> x0 y0 x1 y1 ...` with rational coordinates `p/q`. Strings
/// become vertices in increasing id order.
pub fn parse_string_diagram(s: &str) -> Result<StringDiagram> {
    let mut lines = Lines::new(s);
    let mut strings: Vec<(usize, Vec<Point>)> = Vec::new();
    while let Some((l, t)) = lines.next() {
        keyword(l, &t, "string", 2)?;
        let id: usize = num(l, t[1])?;
        let coords: Vec<Q> = t[2..].iter().map(|c| num::<Q>(l, c)).collect::<Result<_>>()?;
        if coords.len() % 2 != 0 {
            return Err(Error::parse(l, "odd number of coordinates"));
        }
        let pts = coords.chunks(2).map(|c| Point::new(c[0].clone(), c[1].clone())).collect();
        strings.push((id, pts));
    }
    strings.sort_by_key(|s| s.0);
    if let Some(w) = strings.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::parse(lines.last, format!("string id {} repeated", w[0].0)));
    }
    StringDiagram::new(strings.into_iter().map(|s| s.1).collect())
}

pub fn write_string_diagram(d: &StringDiagram) -> String {
    let mut out = String::new();
    for (i, s) in d.strings().iter().enumerate() {
        let pts: Vec<String> = s.iter().map(|p| format!("{} {}", p.x, p.y)).collect();
        let _ = writeln!(out, "string {i} {}", pts.join(" "));
    }
    out
}

/// One line of `2n` chord ids, each appearing twice.
pub fn parse_chord_diagram(s: &str) -> Result<ChordDiagram> {
    let mut lines = Lines::new(s);
    let (l, t) = match lines.next() {
        Some(x) => x,
        None => return ChordDiagram::from_sequence(&[]),
    };
    lines.finish()?;
    ChordDiagram::from_sequence(&nums(l, &t)?).map_err(|e| Error::parse(l, e.to_string()))
}

pub fn write_chord_diagram(cd: &ChordDiagram) -> String {
    format!("{}\n", join(cd.sequence()))
}

/// `n` lines of `n` characters `0`/`1`.
pub fn parse_matrix(s: &str) -> Result<Gf2Matrix> {
    let mut lines = Lines::new(s);
    let mut rows = Vec::new();
    while let Some((l, t)) = lines.next() {
        let row: String = t.concat();
        let bits = row
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(l, format!("matrix entry {other:?} is not 0 or 1"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        rows.push((l, bits));
    }
    let n = rows.len();
    if let Some((l, r)) = rows.iter().find(|(_, r)| r.len() != n) {
        return Err(Error::parse(*l, format!("row has {} entries, expected {n}", r.len())));
    }
    Gf2Matrix::from_rows(&rows.into_iter().map(|r| r.1).collect::<Vec<_>>())
}

pub fn write_matrix(p: &Gf2Matrix) -> String {
    let mut out = String::with_capacity(p.n() * (p.n() + 1));
    for i in 0..p.n() {
        out.extend((0..p.n()).map(|j| if p.get(i, j) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// `a <v...>` and `b <v...>`.
pub fn parse_separation(s: &str) -> Result<Separation> {
    let mut lines = Lines::new(s);
    let (la, a) = lines.expect("\"a\" line")?;
    keyword(la, &a, "a", 1)?;
    let (lb, b) = lines.expect("\"b\" line")?;
    keyword(lb, &b, "b", 1)?;
    lines.finish()?;
    Ok(Separation::new(nums(la, &a[1..])?, nums(lb, &b[1..])?))
}

pub fn write_separation(s: &Separation) -> String {
    format!("a {}\nb {}\n", join(s.a.iter().copied()), join(s.b.iter().copied())).replace(" \n", "\n")
}

/// The keyword of the first non-comment line, used to sniff file kinds.
pub fn first_keyword(s: &str) -> Option<&str> {
    Lines::new(s).peek_keyword()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::cycle(5);
        let s = write_graph(&g);
        assert_eq!(s, "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
        assert_eq!(parse_graph(&s).unwrap(), g);
        assert_eq!(parse_graph("# comment\n\n3 1\n2 0\n").unwrap(), Graph::new(3, [(0, 2)]).unwrap());
    }

    #[test]
    fn graph_errors_carry_lines() {
        assert_eq!(parse_graph("3 1\n0 3\n").unwrap_err().kind(), "parse-error");
        assert!(matches!(parse_graph("3 2\n0 1\n").unwrap_err(), Error::Parse { line: 3, .. }));
        assert!(matches!(parse_graph("2 1\n0 x\n").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(parse_graph("3 2\n0 1\n1 0\n").is_err());
        assert!(parse_graph("2 0\n0 1\n").is_err());
    }

    #[test]
    fn td_round_trip() {
        let td = TreeDecomposition::new(Graph::path(2), vec![vec![0, 1], vec![1, 2]]);
        let s = write_td(&td, 3);
        assert_eq!(s, "td 2 2 3\nb 1 0 1\nb 2 1 2\nt 1 2\n");
        assert_eq!(parse_td(&s).unwrap(), (td, 3));
        assert!(parse_td("td 1 1 2\nb 1 0 1\n").is_err());
        assert!(parse_td("td 2 2 3\nb 1 0 1\n").is_err());
    }

    #[test]
    fn model_round_trip() {
        let m = MinorModel::new(Graph::complete(2), vec![vec![0, 1], vec![2]]);
        let s = write_model(&m);
        assert_eq!(s, "model 2\ns 0 0 1\ns 1 2\n");
        assert_eq!(parse_model(&s, Graph::complete(2)).unwrap(), m);
        assert!(parse_branch_sets("model 2\ns 0 1\ns 0 2\n").is_err());
    }

    #[test]
    fn steps_round_trip() {
        let steps = vec![VmStep::LocalComplement(3), VmStep::Delete(1)];
        let s = write_vm_steps(&steps);
        assert_eq!(s, "lc 3\ndel 1\n");
        assert_eq!(parse_vm_steps(&s).unwrap(), steps);
        assert!(parse_vm_steps("pivot 3\n").is_err());
    }

    #[test]
    fn ordered_round_trip() {
        let og = OrderedGraph::new(Graph::path(3), vec![2, 0, 1]).unwrap();
        let s = write_ordered(&og);
        assert!(s.ends_with("order 2 0 1\n"));
        assert_eq!(parse_ordered(&s).unwrap(), og);
        assert!(parse_ordered("2 0\norder 0 0\n").is_err());
    }

    #[test]
    fn string_diagram_round_trip() {
        let s = "string 1 0 -1 0 1/2\nstring 0 -1 0 1/2 0\n";
        let d = parse_string_diagram(s).unwrap();
        assert_eq!(d.root(0), &Point::from_ints((-1, 1), (0, 1)));
        let w = write_string_diagram(&d);
        assert_eq!(w, "string 0 -1 0 1/2 0\nstring 1 0 -1 0 1/2\n");
        assert_eq!(parse_string_diagram(&w).unwrap(), d);
        assert!(parse_string_diagram("string 0 1 1 0 0\n").is_err());
        assert!(parse_string_diagram("string 0 1 0 0\n").is_err());
    }

    #[test]
    fn chord_and_matrix_round_trip() {
        let cd = parse_chord_diagram("1 2 1 2\n").unwrap();
        assert_eq!(write_chord_diagram(&cd), "1 2 1 2\n");
        assert!(parse_chord_diagram("1 2 1\n").is_err());
        let p = parse_matrix("011\n101\n110\n").unwrap();
        assert_eq!(write_matrix(&p), "011\n101\n110\n");
        assert!(parse_matrix("01\n1\n").is_err());
        assert!(parse_matrix("0a\n00\n").is_err());
    }

    #[test]
    fn drawing_and_separation_round_trip() {
        let g = Graph::new(5, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        let d = MarkedDrawing { graph: g, crossings: vec![Crossing { vertex: 4, rotation: [0, 1, 2, 3] }] };
        let s = write_drawing(&d);
        assert!(s.ends_with("x 4 0 1 2 3\n"));
        assert_eq!(parse_drawing(&s).unwrap(), d);
        let sep = Separation::new(vec![0, 1], vec![1, 2]);
        let s = write_separation(&sep);
        assert_eq!(s, "a 0 1\nb 1 2\n");
        assert_eq!(parse_separation(&s).unwrap(), sep);
        assert_eq!(first_keyword("# x\nmodel 1\n"), Some("model"));
    }
}
