use serde::Serialize;

use qbruhat::cartan::pair;
use qbruhat::qbg::root_name;
use qbruhat::{CosetSystem, Pqbg, RootSystem, Weight, WeylGroup};

use crate::Failure;

pub const QBG_SCHEMA: &str = "qbruhat.qbg/1";
pub const QLS_SCHEMA: &str = "qbruhat.qls/1";
pub const DEGREE_SCHEMA: &str = "qbruhat.degree/1";
pub const VERIFY_SCHEMA: &str = "qbruhat.verify/1";

/// Fields shared by every JSON document.
#[derive(Serialize)]
pub struct Header {
    pub schema: &'static str,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub lambda: Vec<u32>,
    /// 1-based.
    pub parabolic: Vec<usize>,
}

pub fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Check(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Check(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Check(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Check(e.to_string()))
}

#[derive(Serialize)]
struct Vertex {
    id: usize,
    word: String,
    length: usize,
    weight: String,
}

#[derive(Serialize)]
pub struct EdgeRow {
    source: String,
    target: String,
    label: String,
    root: String,
    kind: &'static str,
    pairing: i64,
}

#[derive(Serialize)]
struct GraphDoc {
    #[serde(flatten)]
    header: Header,
    vertices: Vec<Vertex>,
    edges: Vec<EdgeRow>,
}

pub struct GraphView<'a> {
    pub rs: &'a RootSystem,
    pub group: &'a WeylGroup,
    pub cosets: &'a CosetSystem,
    pub graph: &'a Pqbg,
    pub lambda: &'a Weight,
}

impl GraphView<'_> {
    fn word(&self, v: usize) -> String {
        self.group.word_string(self.cosets.element(v))
    }

    pub fn edge_rows(&self) -> Vec<EdgeRow> {
        self.graph
            .edges()
            .iter()
            .map(|e| EdgeRow {
                source: self.word(e.source),
                target: self.word(e.target),
                label: root_name(self.rs, e.label),
                root: self.rs.root(e.label).to_string(),
                kind: match e.kind {
                    qbruhat::EdgeKind::Bruhat => "bruhat",
                    qbruhat::EdgeKind::Quantum => "quantum",
                },
                pairing: pair(self.lambda, self.rs.coroot(e.label)),
            })
            .collect()
    }

    pub fn to_json(&self, header: Header) -> Result<String, Failure> {
        let vertices = (0..self.graph.num_vertices())
            .map(|v| {
                let w = self.cosets.element(v);
                Vertex {
                    id: v,
                    word: self.word(v),
                    length: self.group.length(w),
                    weight: self.group.act(w, self.lambda).to_string(),
                }
            })
            .collect();
        json(&GraphDoc { header, vertices, edges: self.edge_rows() })
    }
}
