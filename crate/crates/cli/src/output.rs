use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex;
use serde::Serialize;
use serde_json::{json, Value};

/// `{:.16e}`: 17 significant digits, round-trip safe, locale independent.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn complex(z: Complex<f64>) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Pretty JSON whose floats are all written through [`float`].
struct SigFig(serde_json::ser::PrettyFormatter<'static>);

impl serde_json::ser::Formatter for SigFig {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<S: Serialize>(value: &S) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let fmt = SigFig(serde_json::ser::PrettyFormatter::with_indent(b"  "));
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).map_err(io::Error::other)?;
    buf.push(b'\n');
    Ok(buf)
}

/// A CSV cell.
pub enum Cell {
    F(f64),
    I(usize),
    B(bool),
    S(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::F(x) => float(*x),
            Cell::I(n) => n.to_string(),
            Cell::B(b) => b.to_string(),
            Cell::S(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::I(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::B(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::S(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::S(s.into())
    }
}

impl<C: Into<Cell>> From<Option<C>> for Cell {
    fn from(o: Option<C>) -> Self {
        o.map_or(Cell::Empty, Into::into)
    }
}

/// Fixed header plus rows.
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> io::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.into_inner().map_err(|e| io::Error::other(e.to_string()))
    }
}

#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::output::Cell::from($x)),*] };
}

pub fn emit(bytes: &[u8], out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
    }
}
