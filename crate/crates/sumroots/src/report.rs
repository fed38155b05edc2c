//! CSV tables built from records, for stdout and for `report`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::CliResult;
use crate::wire::{CertificateWire, CharSumWire, CliqueWire, DecompositionWire, DivisorsWire, Record, ScanWire};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&'static str]) -> Self {
        Table { name, header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

/// Residues joined with commas, the same format the command line accepts.
pub fn residues(xs: &[String]) -> String {
    xs.join(",")
}

pub const CLIQUE_RUN_COLUMNS: [&str; 7] =
    ["p", "d", "omega", "paper_bound", "old_bound", "explored_nodes", "elapsed_ms"];

pub fn clique_run_row(w: &CliqueWire, elapsed_ms: u64) -> Vec<String> {
    vec![
        w.p.to_string(),
        w.d.to_string(),
        w.omega.to_string(),
        w.paper_bound.to_string(),
        opt(&w.old_bound),
        w.explored_nodes.to_string(),
        elapsed_ms.to_string(),
    ]
}

pub const DECOMPOSITION_COLUMNS: [&str; 10] =
    ["kind", "p", "d", "A", "B", "unique_sums", "product_check", "zero_sums", "paley_form", "symmetry_class"];

pub fn decomposition_row(w: &DecompositionWire) -> Vec<String> {
    vec![
        w.kind.clone(),
        w.p.to_string(),
        w.d.to_string(),
        residues(&w.a),
        w.b.as_deref().map(residues).unwrap_or_default(),
        w.unique_sums.to_string(),
        w.product_check.to_string(),
        w.zero_sums.to_string(),
        opt(&w.paley_form),
        w.symmetry_class.to_string(),
    ]
}

pub const CHARSUM_COLUMNS: [&str; 11] =
    ["p", "order", "A", "B", "C", "re", "im", "modulus", "trivial_bound", "vinogradov_bound", "vinogradov_ok"];

pub fn charsum_row(w: &CharSumWire) -> Vec<String> {
    vec![
        w.p.to_string(),
        w.order.to_string(),
        residues(&w.a),
        residues(&w.b),
        w.c.as_deref().map(residues).unwrap_or_default(),
        w.re.to_string(),
        w.im.to_string(),
        w.modulus.to_string(),
        w.trivial_bound.to_string(),
        opt(&w.vinogradov_bound),
        opt(&w.vinogradov_ok),
    ]
}

pub const HISTOGRAM_COLUMNS: [&str; 8] = ["p", "order", "epsilon", "seed", "set_size", "bin_low", "bin_high", "count"];

pub fn histogram_rows(w: &ScanWire) -> Vec<Vec<String>> {
    w.histogram
        .iter()
        .enumerate()
        .map(|(i, count)| {
            vec![
                w.p.to_string(),
                w.order.to_string(),
                w.epsilon.to_string(),
                w.seed.to_string(),
                w.set_size.to_string(),
                (i as f64 / 10.0).to_string(),
                ((i + 1) as f64 / 10.0).to_string(),
                count.to_string(),
            ]
        })
        .collect()
}

pub const CERTIFICATE_COLUMNS: [&str; 8] = ["p", "d", "A", "B", "r", "lhs", "rhs", "bound_ok"];

pub fn certificate_row(w: &CertificateWire) -> Vec<String> {
    vec![
        w.p.to_string(),
        w.d.to_string(),
        residues(&w.a),
        residues(&w.b),
        w.r.to_string(),
        w.lhs.to_string(),
        w.rhs.to_string(),
        w.bound_ok.to_string(),
    ]
}

pub const DIVISOR_COLUMNS: [&str; 7] = ["x", "y", "z", "P", "H", "pi_x", "prime_fraction"];

pub fn divisors_row(w: &DivisorsWire) -> Vec<String> {
    vec![
        w.x.to_string(),
        w.y.to_string(),
        w.z.to_string(),
        w.shifted_primes.to_string(),
        w.integers.to_string(),
        w.pi_x.to_string(),
        w.prime_fraction.to_string(),
    ]
}

/// Aggregates records into one table per record kind, in a fixed order.
/// Tables for kinds that do not occur are present but empty.
pub fn build_tables(records: &[Record]) -> Vec<Table> {
    let mut clique = Table::new("clique", &["p", "d", "omega", "paper_bound", "old_bound"]);
    let mut census = Table::new("decomposition_census", &["kind", "p", "d", "decompositions", "symmetry_classes"]);
    let mut histogram = Table::new("charsum_histogram", &HISTOGRAM_COLUMNS);
    let mut sums = Table::new("charsum", &CHARSUM_COLUMNS);
    let mut certificates = Table::new("certificate", &CERTIFICATE_COLUMNS);
    let mut divisors = Table::new("divisors", &DIVISOR_COLUMNS);

    let mut groups: BTreeMap<(String, u64, u64), (usize, usize)> = BTreeMap::new();
    for record in records {
        match record {
            Record::Clique(w) => clique.push(vec![
                w.p.to_string(),
                w.d.to_string(),
                w.omega.to_string(),
                w.paper_bound.to_string(),
                opt(&w.old_bound),
            ]),
            Record::Decomposition(w) => {
                let g = groups.entry((w.kind.clone(), w.p, w.d)).or_default();
                g.0 += 1;
                g.1 = g.1.max(w.symmetry_class + 1);
            }
            Record::Scan(w) => histogram.rows.extend(histogram_rows(w)),
            Record::CharSum(w) => sums.push(charsum_row(w)),
            Record::Certificate(w) => certificates.push(certificate_row(w)),
            Record::Divisors(w) => divisors.push(divisors_row(w)),
        }
    }
    for ((kind, p, d), (count, classes)) in groups {
        census.push(vec![kind, p.to_string(), d.to_string(), count.to_string(), classes.to_string()]);
    }
    vec![clique, census, histogram, sums, certificates, divisors]
}

/// Writes `<name>.csv` per table into `dir`, creating it if needed.
pub fn write_tables(tables: &[Table], dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    for t in tables {
        fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv()?)?;
    }
    Ok(())
}
