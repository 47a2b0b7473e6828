//! Line-oriented instance and witness files. Ids are 1-based on disk.
//!
//! ```text
//! c a path with both ends separated
//! p mmcu 3 2 1 0
//! e 1 2
//! e 2 3
//! t 1 a
//! t 3 b
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use mmcu::reductions::{BpvcInstance, MixedCutInstance};
use mmcu::{EdgeId, MixedSolution, MmcuInstance, MultiGraph, Partition, VertexId};

use crate::CliError;

#[derive(Clone, Debug)]
pub enum Instance {
    Mmcu(MmcuInstance),
    MixedCut(MixedCutInstance),
    Bpvc(BpvcInstance),
}

fn syntax(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, w)| !w.is_empty() && w[0] != "c")
}

fn num(line: usize, word: &str) -> Result<usize, CliError> {
    word.parse().map_err(|_| syntax(line, format!("expected a number, got `{word}`")))
}

fn expect_arity(line: usize, words: &[&str], n: usize) -> Result<(), CliError> {
    if words.len() == n {
        Ok(())
    } else {
        Err(syntax(line, format!("`{}` takes {} values, got {}", words[0], n - 1, words.len() - 1)))
    }
}

fn vertex(line: usize, word: &str, n: usize) -> Result<VertexId, CliError> {
    match num(line, word)? {
        i @ 1.. if i <= n => Ok(VertexId(i - 1)),
        i => Err(syntax(line, format!("vertex {i} outside 1..={n}"))),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| syntax(0, "missing `p` line"))?;
    if header[0] != "p" || header.len() < 2 {
        return Err(syntax(line, "the first line must be `p <kind> ...`"));
    }
    match header[1] {
        "mmcu" | "mixedcut" => {
            expect_arity(line, &header, 6)?;
            let [n, m, k, l] = [2, 3, 4, 5].map(|i| num(line, header[i]));
            let (n, m, k, l) = (n?, m?, k?, l?);
            let mut g = MultiGraph::with_vertices(n);
            let mut labels: Vec<(String, VertexId)> = Vec::new();
            let (mut source, mut sink) = (None, None);
            for (line, w) in it {
                match w[0] {
                    "e" => {
                        expect_arity(line, &w, 3)?;
                        let (a, b) = (vertex(line, w[1], n)?, vertex(line, w[2], n)?);
                        g.add_edge(a, b).map_err(|e| syntax(line, e.to_string()))?;
                    }
                    "t" if header[1] == "mmcu" => {
                        expect_arity(line, &w, 3)?;
                        labels.push((w[2].to_string(), vertex(line, w[1], n)?));
                    }
                    "source" | "sink" if header[1] == "mixedcut" => {
                        expect_arity(line, &w, 2)?;
                        let slot = if w[0] == "source" { &mut source } else { &mut sink };
                        if slot.replace(vertex(line, w[1], n)?).is_some() {
                            return Err(syntax(line, format!("second `{}` line", w[0])));
                        }
                    }
                    other => return Err(syntax(line, format!("unexpected `{other}` line"))),
                }
            }
            if g.edge_count() != m {
                return Err(syntax(line, format!("header announces {m} edges, found {}", g.edge_count())));
            }
            if header[1] == "mixedcut" {
                let s = source.ok_or_else(|| syntax(line, "missing `source` line"))?;
                let t = sink.ok_or_else(|| syntax(line, "missing `sink` line"))?;
                return Ok(Instance::MixedCut(MixedCutInstance::new(g, s, t, k, l)?));
            }
            // a reused label joins the earlier class
            let mut classes: Vec<Vec<VertexId>> = Vec::new();
            let mut index: HashMap<String, usize> = HashMap::new();
            for (label, v) in labels {
                let next = classes.len();
                let c = *index.entry(label).or_insert(next);
                if c == next {
                    classes.push(Vec::new());
                }
                classes[c].push(v);
            }
            Ok(Instance::Mmcu(MmcuInstance::new(g, Partition::new(classes)?, k, l)?))
        }
        "bpvc" => {
            expect_arity(line, &header, 7)?;
            let [nx, ny, m, p, q] = [2, 3, 4, 5, 6].map(|i| num(line, header[i]));
            let (nx, ny, m, p, q) = (nx?, ny?, m?, p?, q?);
            let mut edges = Vec::new();
            for (line, w) in it {
                if w[0] != "e" {
                    return Err(syntax(line, format!("unexpected `{}` line", w[0])));
                }
                expect_arity(line, &w, 3)?;
                let (x, y) = (vertex(line, w[1], nx + ny)?, vertex(line, w[2], nx + ny)?);
                if x.0 >= nx || y.0 < nx {
                    return Err(syntax(line, "edges run from 1..=nx to nx+1..=nx+ny"));
                }
                edges.push((x, y));
            }
            if edges.len() != m {
                return Err(syntax(line, format!("header announces {m} edges, found {}", edges.len())));
            }
            Ok(Instance::Bpvc(BpvcInstance::new(
                (0..nx).map(VertexId),
                (nx..nx + ny).map(VertexId),
                edges,
                p,
                q,
            )?))
        }
        other => Err(syntax(line, format!("unknown instance kind `{other}`"))),
    }
}

/// On-disk numbering of a graph whose ids may have gaps.
pub struct Numbering {
    vertices: BTreeMap<VertexId, usize>,
    edges: BTreeMap<EdgeId, usize>,
}

impl Numbering {
    pub fn of(g: &MultiGraph) -> Self {
        Self {
            vertices: g.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect(),
            edges: g.edge_ids().enumerate().map(|(i, e)| (e, i + 1)).collect(),
        }
    }

    fn vertex(&self, v: VertexId) -> usize {
        self.vertices[&v]
    }

    fn edge(&self, e: EdgeId) -> usize {
        self.edges[&e]
    }
}

fn write_graph(out: &mut String, kind: &str, g: &MultiGraph, k: usize, l: usize) -> Numbering {
    let num = Numbering::of(g);
    writeln!(out, "p {kind} {} {} {k} {l}", g.vertex_count(), g.edge_count()).unwrap();
    for (_, a, b) in g.edges() {
        writeln!(out, "e {} {}", num.vertex(a), num.vertex(b)).unwrap();
    }
    num
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    match inst {
        Instance::Mmcu(i) => {
            let num = write_graph(&mut out, "mmcu", i.graph(), i.k, i.l);
            let mut rows: Vec<(usize, usize)> = i
                .relation()
                .classes()
                .iter()
                .enumerate()
                .flat_map(|(c, class)| class.iter().map(move |&v| (v, c)))
                .map(|(v, c)| (num.vertex(v), c + 1))
                .collect();
            rows.sort_unstable();
            for (v, c) in rows {
                writeln!(out, "t {v} {c}").unwrap();
            }
        }
        Instance::MixedCut(mc) => {
            let num = write_graph(&mut out, "mixedcut", mc.graph(), mc.k, mc.l);
            writeln!(out, "source {}", num.vertex(mc.source())).unwrap();
            writeln!(out, "sink {}", num.vertex(mc.sink())).unwrap();
        }
        Instance::Bpvc(b) => {
            let ids: BTreeMap<VertexId, usize> =
                b.left().iter().chain(b.right()).enumerate().map(|(i, &v)| (v, i + 1)).collect();
            let (nx, ny, m) = (b.left().len(), b.right().len(), b.edges().len());
            writeln!(out, "p bpvc {nx} {ny} {m} {} {}", b.p, b.q_edges).unwrap();
            for (x, y) in b.edges() {
                writeln!(out, "e {} {}", ids[x], ids[y]).unwrap();
            }
        }
    }
    out
}

/// `s YES` with `v` and `f` lines, or `s NO`.
pub fn write_witness(g: &MultiGraph, sol: Option<&MixedSolution>) -> String {
    let Some(sol) = sol else { return "s NO\n".into() };
    let num = Numbering::of(g);
    let join = |ids: Vec<usize>| ids.iter().map(|i| format!(" {i}")).collect::<String>();
    format!(
        "s YES\nv{}\nf{}\n",
        join(sol.vertices.iter().map(|&v| num.vertex(v)).collect()),
        join(sol.edges.iter().map(|&e| num.edge(e)).collect()),
    )
}

/// `None` for `s NO`. Several `v` and `f` lines accumulate.
pub fn parse_witness(text: &str, g: &MultiGraph) -> Result<Option<MixedSolution>, CliError> {
    let vertices: Vec<VertexId> = g.vertices().collect();
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut answer = None;
    let (mut xs, mut fs) = (BTreeSet::new(), BTreeSet::new());
    for (line, w) in lines(text) {
        match w[0] {
            "s" => {
                expect_arity(line, &w, 2)?;
                answer = Some(match w[1] {
                    "YES" => true,
                    "NO" => false,
                    other => return Err(syntax(line, format!("expected YES or NO, got `{other}`"))),
                });
            }
            "v" => {
                for word in &w[1..] {
                    xs.insert(vertex(line, word, vertices.len()).map(|v| vertices[v.0])?);
                }
            }
            "f" => {
                for word in &w[1..] {
                    let i = num(line, word)?;
                    let e = i.checked_sub(1).and_then(|i| edges.get(i));
                    fs.insert(*e.ok_or_else(|| syntax(line, format!("edge {i} outside 1..={}", edges.len())))?);
                }
            }
            other => return Err(syntax(line, format!("unexpected `{other}` line"))),
        }
    }
    match answer {
        Some(true) => Ok(Some(MixedSolution::new(xs, fs))),
        Some(false) if xs.is_empty() && fs.is_empty() => Ok(None),
        Some(false) => Err(syntax(0, "`s NO` witness lists deletions")),
        None => Err(syntax(0, "missing `s` line")),
    }
}
