//! Text serializations: CSV and JSON with `%.12g` reals and LF endings.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

use crate::graph::{Graph, NodeClassMap};
use crate::matrix::{CrossMatrix, DistanceMatrix};
use crate::mds::Embedding;
use crate::wl::Labeling;

/// Formats a real like C's `printf("%.12g", x)`. Negative zero prints as
/// `0`.
pub fn format_g(x: f64) -> String {
    const PRECISION: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exponent) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    } else {
        let decimals = (PRECISION - 1 - exponent) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Value that can be written into a matrix cell.
pub trait Cell: Copy {
    fn render(self) -> String;
    fn json(self) -> serde_json::Value;
}

impl Cell for u64 {
    fn render(self) -> String {
        self.to_string()
    }

    fn json(self) -> serde_json::Value {
        self.into()
    }
}

impl Cell for f64 {
    fn render(self) -> String {
        format_g(self)
    }

    fn json(self) -> serde_json::Value {
        self.into()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn join_row<'a>(cells: impl Iterator<Item = String> + 'a) -> String {
    let mut line = cells.collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Header row of node ids followed by one numeric row per node.
pub fn matrix_csv<T: Cell>(m: &DistanceMatrix<T>) -> String {
    if m.is_empty() {
        return String::new();
    }
    let mut out = join_row(m.ids().iter().map(|id| csv_field(id)));
    for i in 0..m.len() {
        out.push_str(&join_row(m.row(i).iter().map(|v| v.render())));
    }
    out
}

/// `{"ids": [...], "d": [[...], ...]}`
pub fn matrix_json<T: Cell>(m: &DistanceMatrix<T>) -> String {
    let rows: Vec<Vec<serde_json::Value>> = (0..m.len())
        .map(|i| m.row(i).iter().map(|v| v.json()).collect())
        .collect();
    to_json(&serde_json::json!({ "ids": m.ids(), "d": rows }))
}

/// Header `id,<column ids>`, then `<row id>,<values>` per row.
pub fn cross_csv<T: Cell>(m: &CrossMatrix<T>) -> String {
    let mut out = join_row(std::iter::once("id".to_owned()).chain(m.col_ids().iter().map(|id| csv_field(id))));
    for i in 0..m.rows() {
        let values = (0..m.cols()).map(|j| m.get(i, j).render());
        out.push_str(&join_row(std::iter::once(csv_field(&m.row_ids()[i])).chain(values)));
    }
    out
}

/// `{"row_ids": [...], "col_ids": [...], "d": [[...], ...]}`
pub fn cross_json<T: Cell>(m: &CrossMatrix<T>) -> String {
    let rows: Vec<Vec<serde_json::Value>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).json()).collect())
        .collect();
    to_json(&serde_json::json!({ "row_ids": m.row_ids(), "col_ids": m.col_ids(), "d": rows }))
}

/// `node_id,label` rows in node order, no header.
pub fn labels_csv(g: &Graph, labeling: &Labeling) -> String {
    let mut out = String::new();
    for (v, id) in g.node_ids().iter().enumerate() {
        out.push_str(&join_row([csv_field(id), labeling.label(v).0.to_string()].into_iter()));
    }
    out
}

/// `node_id,x1,...,xk[,class]`, with a header row.
pub fn embedding_csv(e: &Embedding, classes: Option<&NodeClassMap>) -> String {
    let dims = e.dims();
    let mut header: Vec<String> = vec!["node_id".into()];
    header.extend((1..=dims).map(|k| format!("x{k}")));
    if classes.is_some() {
        header.push("class".into());
    }
    let mut out = join_row(header.into_iter());
    for (id, coords) in e.node_ids.iter().zip(&e.coords) {
        let mut cells = vec![csv_field(id)];
        cells.extend(coords.iter().map(|&x| format_g(x)));
        if let Some(classes) = classes {
            cells.push(csv_field(classes.class_of(id).unwrap_or("")));
        }
        out.push_str(&join_row(cells.into_iter()));
    }
    out
}

#[derive(Serialize)]
struct EmbeddingJson<'a> {
    ids: &'a [String],
    coords: &'a [Vec<f64>],
    eigenvalues: &'a [f64],
    stress: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<Option<&'a str>>>,
}

pub fn embedding_json(e: &Embedding, classes: Option<&NodeClassMap>) -> String {
    to_json(&EmbeddingJson {
        ids: &e.node_ids,
        coords: &e.coords,
        eigenvalues: &e.eigenvalues,
        stress: e.stress,
        classes: classes.map(|c| e.node_ids.iter().map(|id| c.class_of(id)).collect()),
    })
}

struct G12Formatter(CompactFormatter);

impl Formatter for G12Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_g(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with `%.12g` reals and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, G12Formatter(CompactFormatter));
    value.serialize(&mut ser).expect("in-memory JSON serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}
