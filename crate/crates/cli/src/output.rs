use std::fmt::Write as _;

use lapsim_core::analysis::PropertyReport;
use lapsim_core::Error;
use num_bigint::BigInt;

pub const CSV_HEADER: [&str; 11] = [
    "id", "n", "kappa", "volume", "hstar", "reflexive", "ell", "symmetric", "unimodal", "idp", "error",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, T::to_string)
}

fn joined(h: &[BigInt], sep: &str) -> String {
    h.iter().map(BigInt::to_string).collect::<Vec<_>>().join(sep)
}

pub fn csv_record(id: &str, row: &Result<PropertyReport, Error>) -> Vec<String> {
    match row {
        Ok(r) => vec![
            id.to_string(),
            r.n.to_string(),
            r.kappa.to_string(),
            r.volume.to_string(),
            r.hstar.as_deref().map(|h| joined(h, ";")).unwrap_or_default(),
            r.reflexive.to_string(),
            opt(&r.ell),
            opt(&r.symmetric),
            opt(&r.unimodal),
            opt(&r.idp),
            r.notes.join("; "),
        ],
        Err(e) => {
            let mut rec = vec![String::new(); CSV_HEADER.len()];
            rec[0] = id.to_string();
            rec[CSV_HEADER.len() - 1] = e.to_string();
            rec
        }
    }
}

pub fn csv_table(rows: &[(String, Result<PropertyReport, Error>)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for (id, row) in rows {
        w.write_record(csv_record(id, row)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

pub fn text_report(r: &PropertyReport) -> String {
    let mut out = String::new();
    let edges: Vec<String> = r.graph.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    if let Some(id) = &r.id {
        writeln!(out, "graph      {id}").unwrap();
    }
    writeln!(out, "n          {}", r.n).unwrap();
    writeln!(out, "edges      {}", edges.join(" ")).unwrap();
    writeln!(out, "kappa      {}", r.kappa).unwrap();
    writeln!(out, "volume     {}", r.volume).unwrap();
    match (&r.hstar, &r.strategy) {
        (Some(h), Some(s)) => writeln!(out, "h*         ({}) [{s}]", joined(h, ", ")).unwrap(),
        _ => writeln!(out, "h*         -").unwrap(),
    }
    writeln!(out, "reflexive  {}", r.reflexive).unwrap();
    writeln!(out, "ell        {}", r.ell.as_ref().map_or("-".into(), BigInt::to_string)).unwrap();
    let flag = |x: Option<bool>| x.map_or("-".to_string(), |b| b.to_string());
    writeln!(out, "symmetric  {}", flag(r.symmetric)).unwrap();
    writeln!(out, "unimodal   {}", flag(r.unimodal)).unwrap();
    writeln!(out, "idp        {}", flag(r.idp)).unwrap();
    for note in &r.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

pub fn text_row(id: &str, row: &Result<PropertyReport, Error>) -> String {
    match row {
        Ok(r) => {
            let h = r.hstar.as_deref().map_or("-".into(), |h| format!("({})", joined(h, ", ")));
            let flag = |x: Option<bool>| x.map_or("-".to_string(), |b| b.to_string());
            format!(
                "{id}: kappa={} h*={h} reflexive={} ell={} unimodal={} idp={}",
                r.kappa,
                r.reflexive,
                r.ell.as_ref().map_or("-".into(), BigInt::to_string),
                flag(r.unimodal),
                flag(r.idp)
            )
        }
        Err(e) => format!("{id}: error: {e}"),
    }
}
