//! Output documents: one serde type per payload, rendered either as JSON or
//! as plain-text tables.
//!
//! Every JSON document is an object with a `kind` tag and a `model` block
//! `{p, q, c, N}`; fractions are strings `"num/den"` (or an integer).

use minfusion::{
    central_charge, kac_table, CoverCertificate, FusionTensor, KacLabel, LabeledGroup, ModelParams,
    Sector, Witness,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelInfo {
    pub p: i64,
    pub q: i64,
    pub c: String,
    #[serde(rename = "N")]
    pub n: usize,
}

impl ModelInfo {
    pub fn new(params: &ModelParams) -> Self {
        Self {
            p: params.p(),
            q: params.q(),
            c: central_charge(params).to_string(),
            n: params.sector_count(),
        }
    }

    fn heading(&self) -> String {
        format!(
            "({},{}) minimal model: c = {}, N = {}\n",
            self.p, self.q, self.c, self.n
        )
    }
}

/// A sector by name and canonical Kac label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorRef {
    pub name: String,
    pub label: [i64; 2],
}

impl From<&Sector> for SectorRef {
    fn from(s: &Sector) -> Self {
        Self {
            name: s.name(),
            label: [s.label.m, s.label.n],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KacDocument {
    pub model: ModelInfo,
    /// Row `m-1`, column `n-1`.
    pub kac_table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorEntry {
    pub name: String,
    pub label: [i64; 2],
    pub h: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionDocument {
    pub model: ModelInfo,
    pub sectors: Vec<SectorEntry>,
    /// `fusion_table[i][j]` lists the sectors of `S_i x S_j` in sector order.
    pub fusion_table: Vec<Vec<Vec<SectorRef>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub name: String,
    pub factors: Vec<u64>,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WitnessDoc {
    NonAdmissibleSum {
        left: Vec<u64>,
        right: Vec<u64>,
        sum: Vec<u64>,
        sectors: [SectorRef; 3],
    },
    UnrealizedTriple {
        sectors: [SectorRef; 3],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub pairs_checked: u64,
    pub admissible_triples: u64,
    pub realized_triples: u64,
    pub sectors_hit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub model: ModelInfo,
    /// `"two_group"` for the built-in construction, `"group_file"` otherwise.
    pub construction: String,
    pub group: GroupInfo,
    pub verdict: String,
    pub witness: Option<WitnessDoc>,
    pub stats: StatsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub order: u64,
    /// `labels[g]` is the sector of the element `g` of `Z_order`.
    pub labels: Vec<SectorRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDocument {
    pub model: ModelInfo,
    pub max_order: u64,
    pub covers: Vec<CoverEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Kac(KacDocument),
    Fusion(FusionDocument),
    Certificate(Box<CertificateDocument>),
    Search(SearchDocument),
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        match self {
            Document::Kac(d) => kac_text(d),
            Document::Fusion(d) => fusion_text(d),
            Document::Certificate(d) => certificate_text(d),
            Document::Search(d) => search_text(d),
        }
    }
}

pub fn kac_document(params: &ModelParams) -> KacDocument {
    KacDocument {
        model: ModelInfo::new(params),
        kac_table: kac_table(params)
            .into_iter()
            .map(|row| row.into_iter().map(|h| h.to_string()).collect())
            .collect(),
    }
}

pub fn fusion_document(tensor: &FusionTensor) -> FusionDocument {
    let sectors = tensor.sectors();
    FusionDocument {
        model: ModelInfo::new(tensor.params()),
        sectors: sectors
            .iter()
            .map(|s| SectorEntry {
                name: s.name(),
                label: [s.label.m, s.label.n],
                h: s.h.to_string(),
            })
            .collect(),
        fusion_table: (0..sectors.len())
            .map(|i| {
                (0..sectors.len())
                    .map(|j| {
                        tensor
                            .fuse(i, j)
                            .into_iter()
                            .map(|k| SectorRef::from(&sectors[k]))
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn certificate_document(
    tensor: &FusionTensor,
    construction: &str,
    group: GroupInfo,
    cert: &CoverCertificate,
) -> CertificateDocument {
    let by_label = |l: &KacLabel| {
        let s = &tensor.sectors()[tensor
            .index_of(*l)
            .expect("witness labels come from the model")];
        SectorRef::from(s)
    };
    let refs = |ls: &[KacLabel; 3]| [by_label(&ls[0]), by_label(&ls[1]), by_label(&ls[2])];
    CertificateDocument {
        model: ModelInfo::new(tensor.params()),
        construction: construction.to_string(),
        group,
        verdict: cert.verdict.to_string(),
        witness: cert.witness.as_ref().map(|w| match w {
            Witness::NonAdmissibleSum {
                left,
                right,
                sum,
                sectors,
            } => WitnessDoc::NonAdmissibleSum {
                left: left.clone(),
                right: right.clone(),
                sum: sum.clone(),
                sectors: refs(sectors),
            },
            Witness::UnrealizedTriple { sectors } => WitnessDoc::UnrealizedTriple {
                sectors: refs(sectors),
            },
        }),
        stats: StatsDoc {
            pairs_checked: cert.stats.pairs_checked,
            admissible_triples: cert.stats.admissible_triples,
            realized_triples: cert.stats.realized_triples,
            sectors_hit: cert.stats.sectors_hit,
        },
    }
}

pub fn search_document(
    tensor: &FusionTensor,
    max_order: u64,
    covers: &[LabeledGroup],
) -> SearchDocument {
    let sectors = tensor.sectors();
    SearchDocument {
        model: ModelInfo::new(tensor.params()),
        max_order,
        covers: covers
            .iter()
            .map(|g| CoverEntry {
                order: g.spec().order(),
                labels: g
                    .labels()
                    .iter()
                    .map(|&s| SectorRef::from(&sectors[s]))
                    .collect(),
            })
            .collect(),
    }
}

/// Left-aligned columns separated by two spaces; no trailing whitespace.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<width$}  ", width = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn kac_text(d: &KacDocument) -> String {
    let cols = d.kac_table.first().map_or(0, Vec::len);
    let mut rows = vec![std::iter::once("h(m,n)".to_string())
        .chain((1..=cols).map(|n| format!("n={n}")))
        .collect::<Vec<_>>()];
    for (i, row) in d.kac_table.iter().enumerate() {
        rows.push(
            std::iter::once(format!("m={}", i + 1))
                .chain(row.iter().cloned())
                .collect(),
        );
    }
    d.model.heading() + &table(&rows)
}

fn cell(entries: &[SectorRef]) -> String {
    entries
        .iter()
        .map(|s| s.name.as_str())
        .collect::<Vec<_>>()
        .join("+")
}

fn fusion_text(d: &FusionDocument) -> String {
    let mut rows = vec![std::iter::once("[h]x[h']".to_string())
        .chain(d.sectors.iter().map(|s| s.name.clone()))
        .collect::<Vec<_>>()];
    for (s, row) in d.sectors.iter().zip(&d.fusion_table) {
        rows.push(
            std::iter::once(s.name.clone())
                .chain(row.iter().map(|c| cell(c)))
                .collect(),
        );
    }
    d.model.heading() + &table(&rows)
}

fn element(coords: &[u64]) -> String {
    format!(
        "({})",
        coords
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn certificate_text(d: &CertificateDocument) -> String {
    let mut out = d.model.heading();
    let source = match d.construction.as_str() {
        "two_group" => " from the 2-group construction",
        _ => "",
    };
    out.push_str(&format!(
        "group: {} (order {}){source}\n",
        d.group.name, d.group.order
    ));
    out.push_str(&format!("verdict: {}\n", d.verdict));
    match &d.witness {
        Some(WitnessDoc::NonAdmissibleSum {
            left,
            right,
            sum,
            sectors,
        }) => out.push_str(&format!(
            "witness: {} + {} = {} but {} x {} does not contain {}\n",
            element(left),
            element(right),
            element(sum),
            sectors[0].name,
            sectors[1].name,
            sectors[2].name
        )),
        Some(WitnessDoc::UnrealizedTriple { sectors }) => out.push_str(&format!(
            "witness: {} x {} contains {} but no g1 + g2 = g3 realizes it\n",
            sectors[0].name, sectors[1].name, sectors[2].name
        )),
        None => {}
    }
    let s = &d.stats;
    out.push_str(&format!("pairs checked: {}\n", s.pairs_checked));
    out.push_str(&format!(
        "sector triples: {} admissible, {} realized by group sums\n",
        s.admissible_triples, s.realized_triples
    ));
    out.push_str(&format!(
        "sectors hit: {} of {}\n",
        s.sectors_hit, d.model.n
    ));
    out
}

fn search_text(d: &SearchDocument) -> String {
    let mut out = d.model.heading();
    out.push_str(&format!(
        "cyclic covers of order at most {} (up to g -> -g): {}\n",
        d.max_order,
        d.covers.len()
    ));
    for c in &d.covers {
        let labels: Vec<&str> = c.labels.iter().map(|s| s.name.as_str()).collect();
        out.push_str(&format!("Z{}: {}\n", c.order, labels.join(" ")));
    }
    out
}
