use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};
use trace_shape::shapelab::{CsvRow, ScanOutcome};
use trace_shape::{Gram, Int, Report, Witness};

use crate::Format;

/// Single writer for every command's output.
pub struct Sink {
    w: Box<dyn Write>,
    format: Format,
    metadata: bool,
}

fn to_io(e: impl std::error::Error + Send + Sync + 'static) -> io::Error {
    io::Error::new(io::ErrorKind::Other, e)
}

#[derive(Serialize)]
struct Wrapped<'a, T: ?Sized> {
    metadata: Value,
    data: &'a T,
}

fn metadata_value() -> Value {
    json!({
        "tool": "trace-shape",
        "version": env!("CARGO_PKG_VERSION"),
        "generated_at": chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    })
}

impl Sink {
    pub fn new(w: Box<dyn Write>, format: Format, metadata: bool) -> Self {
        Sink { w, format, metadata }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.w.flush()
    }

    fn text_header(&mut self) -> io::Result<()> {
        if self.metadata {
            let m = metadata_value();
            writeln!(
                self.w,
                "# {} {} generated {}",
                m["tool"].as_str().unwrap_or_default(),
                m["version"].as_str().unwrap_or_default(),
                m["generated_at"].as_str().unwrap_or_default()
            )?;
        }
        Ok(())
    }

    fn json_doc<T: Serialize + ?Sized>(&mut self, data: &T) -> io::Result<()> {
        if self.metadata {
            let doc = Wrapped {
                metadata: metadata_value(),
                data,
            };
            serde_json::to_writer_pretty(&mut self.w, &doc)
        } else {
            serde_json::to_writer_pretty(&mut self.w, data)
        }
        .map_err(to_io)?;
        writeln!(self.w)
    }

    fn csv_rows(&mut self, rows: &[CsvRow]) -> io::Result<()> {
        self.text_header()?;
        let mut c = csv::Writer::from_writer(&mut self.w);
        for r in rows {
            c.serialize(r).map_err(to_io)?;
        }
        c.flush()
    }

    pub fn reports(&mut self, reports: &[Report]) -> io::Result<()> {
        match self.format {
            Format::Json => {
                if reports.len() == 1 {
                    self.json_doc(&reports[0])
                } else {
                    self.json_doc(reports)
                }
            }
            Format::Csv => {
                let rows: Vec<CsvRow> = reports.iter().map(CsvRow::from_report).collect();
                self.csv_rows(&rows)
            }
            Format::Pretty => {
                self.text_header()?;
                for r in reports {
                    write_pretty(&mut self.w, r)?;
                }
                Ok(())
            }
        }
    }

    /// One record per field, then the summary.
    pub fn scan(&mut self, s: &ScanOutcome<Int>) -> io::Result<()> {
        match self.format {
            Format::Json => {
                // JSON lines, so long scans can be consumed incrementally
                if self.metadata {
                    serde_json::to_writer(&mut self.w, &json!({ "metadata": metadata_value() }))
                        .map_err(to_io)?;
                    writeln!(self.w)?;
                }
                for r in &s.reports {
                    serde_json::to_writer(&mut self.w, r).map_err(to_io)?;
                    writeln!(self.w)?;
                }
                serde_json::to_writer(&mut self.w, &json!({ "summary": s.summary })).map_err(to_io)?;
                writeln!(self.w)
            }
            Format::Csv => {
                let mut rows: Vec<CsvRow> = s.reports.iter().map(CsvRow::from_report).collect();
                rows.push(CsvRow::from_summary(&s.summary));
                self.csv_rows(&rows)
            }
            Format::Pretty => {
                self.text_header()?;
                for r in &s.reports {
                    write_pretty(&mut self.w, r)?;
                }
                let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
                writeln!(
                    self.w,
                    "summary: ell={} max_conductor={} fields={} all_verified={} tame_isometric={} wild_isometric={}",
                    s.summary.ell,
                    s.summary.max_conductor,
                    s.summary.fields,
                    s.summary.all_verified,
                    opt(s.summary.tame_isometric),
                    opt(s.summary.wild_isometric)
                )
            }
        }
    }

    pub fn isometry(&mut self, w: Option<&Witness>) -> io::Result<()> {
        match self.format {
            Format::Json => {
                let v = json!({ "isometric": w.is_some(), "witness": w.map(|w| &w.matrix) });
                self.json_doc(&v)
            }
            Format::Csv | Format::Pretty => {
                self.text_header()?;
                match w {
                    None => writeln!(self.w, "not isometric"),
                    Some(w) if self.format == Format::Pretty => {
                        writeln!(self.w, "isometric\nwitness {}", w.matrix)
                    }
                    Some(w) => self.matrix_csv(&w.matrix.to_rows()),
                }
            }
        }
    }

    pub fn gram(&mut self, g: &Gram) -> io::Result<()> {
        match self.format {
            Format::Json => {
                self.json_doc(g)
            }
            Format::Csv => {
                self.text_header()?;
                self.matrix_csv(&g.matrix().to_rows())
            }
            Format::Pretty => {
                self.text_header()?;
                writeln!(self.w, "{g}\ndet {}", g.det())
            }
        }
    }

    fn matrix_csv(&mut self, rows: &[Vec<Int>]) -> io::Result<()> {
        let mut c = csv::WriterBuilder::new().has_headers(false).from_writer(&mut self.w);
        for r in rows {
            c.write_record(r.iter().map(ToString::to_string)).map_err(to_io)?;
        }
        c.flush()
    }
}

fn write_pretty(w: &mut dyn Write, r: &Report) -> io::Result<()> {
    let v = &r.verdicts;
    let path = match r.source_path {
        trace_shape::shapelab::SourcePath::Direct => "direct",
        trace_shape::shapelab::SourcePath::ConnerPerlis => "model",
    };
    writeln!(w, "field {} [{}]", r.spec, path)?;
    writeln!(w, "  disc {}  rad {}", r.disc, r.rad)?;
    writeln!(w, "  q_L        {}", r.gram_ql)?;
    writeln!(w, "  q_L / rad  {}  det {}", r.gram_scaled, r.det_scaled)?;
    writeln!(w, "  shape      {}", r.shape)?;
    if let Some(i) = r.embedding_index() {
        writeln!(w, "  embedding index {i}")?;
    }
    writeln!(
        w,
        "  verdicts   integral_after_rad={} even={} primitive={} det_ok={} shape_matches_expected={} embedding_ok={} model_consistent={}",
        v.integral_after_rad,
        v.even,
        v.primitive,
        v.det_ok,
        v.shape_matches_expected,
        v.embedding_ok,
        v.model_consistent
    )?;
    for n in &r.notes {
        writeln!(w, "  note: {n}")?;
    }
    writeln!(w, "  all verified: {}", if v.all() { "yes" } else { "no" })
}
