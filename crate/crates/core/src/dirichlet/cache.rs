//! On-disk cache of certified zero sets, one CSV file per modulus.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::character::{primitive_characters, DirichletCharacter};
use super::zeros::{scan_primitive, ZeroRecord, ZeroSet};
use crate::error::{Error, Result};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "EXPLICIT_ZERO_CACHE";

const HEADER: [&str; 6] = [
    "modulus",
    "char_exponents",
    "beta",
    "gamma",
    "radius",
    "complete_to_height",
];

#[derive(Debug, Clone)]
pub struct ZeroCache {
    dir: PathBuf,
}

/// How [`ZeroCache::ensure`] obtained its data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Cached,
    Scanned,
}

fn parse_exponents(label: &str) -> Result<Vec<u64>> {
    if label.is_empty() {
        return Ok(Vec::new());
    }
    label
        .split(';')
        .map(|x| {
            x.parse::<u64>()
                .map_err(|e| Error::Parse(format!("exponent {x:?}: {e}")))
        })
        .collect()
}

fn parse_f64(field: &str, what: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("{what} {field:?}: {e}")))
}

impl ZeroCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// The directory named by `EXPLICIT_ZERO_CACHE`, else `default`.
    pub fn from_env_or(default: impl Into<PathBuf>) -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::new(d),
            _ => Self::new(default),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, q: u64) -> PathBuf {
        self.dir.join(format!("zeros_q{q}.csv"))
    }

    /// Zero sets of the primitive characters modulo `q`, if cached.
    pub fn load(&self, q: u64) -> Result<Option<Vec<ZeroSet>>> {
        let path = self.path(q);
        if !path.exists() {
            return Ok(None);
        }
        let mut reader = csv::Reader::from_path(&path)?;
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != HEADER {
            return Err(Error::Parse(format!(
                "{}: unexpected header {headers:?}",
                path.display()
            )));
        }
        let mut zeros: BTreeMap<String, Vec<ZeroRecord>> = BTreeMap::new();
        let mut heights: BTreeMap<String, f64> = BTreeMap::new();
        for row in reader.records() {
            let row = row?;
            if row.len() != 6 {
                return Err(Error::Parse(format!(
                    "{}: row with {} fields",
                    path.display(),
                    row.len()
                )));
            }
            let modulus: u64 = row[0]
                .parse()
                .map_err(|e| Error::Parse(format!("modulus {:?}: {e}", &row[0])))?;
            if modulus != q {
                return Err(Error::Parse(format!(
                    "{}: row for modulus {modulus}",
                    path.display()
                )));
            }
            let label = row[1].to_string();
            parse_exponents(&label)?;
            let height = parse_f64(&row[5], "complete_to_height")?;
            if row[2].is_empty() {
                heights.insert(label, height);
            } else {
                zeros.entry(label).or_default().push(ZeroRecord {
                    beta: parse_f64(&row[2], "beta")?,
                    gamma: parse_f64(&row[3], "gamma")?,
                    multiplicity: 1,
                    certified_radius: parse_f64(&row[4], "radius")?,
                });
            }
        }
        let mut out = Vec::new();
        for chi in primitive_characters(q)? {
            let label = chi.label();
            let Some(&h) = heights.get(&label) else {
                return Ok(None);
            };
            let mut z = zeros.remove(&label).unwrap_or_default();
            z.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
            out.push(ZeroSet {
                character: chi,
                zeros: z,
                complete_to_height: h,
            });
        }
        if let Some(stray) = zeros.keys().next() {
            return Err(Error::Parse(format!(
                "{}: zeros for unknown character {stray:?}",
                path.display()
            )));
        }
        Ok(Some(out))
    }

    /// Writes the zero sets of modulus `q`, replacing any previous file.
    pub fn store(&self, q: u64, sets: &[ZeroSet]) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".zeros_q{q}.csv.tmp"));
        {
            let mut w = csv::Writer::from_path(&tmp)?;
            w.write_record(HEADER)?;
            for set in sets {
                if set.character.modulus() != q {
                    return Err(Error::Domain(format!(
                        "{} does not have modulus {q}",
                        set.character
                    )));
                }
                let m = q.to_string();
                let label = set.character.label();
                let h = set.complete_to_height.to_string();
                for z in &set.zeros {
                    w.write_record([
                        m.as_str(),
                        &label,
                        &z.beta.to_string(),
                        &z.gamma.to_string(),
                        &z.certified_radius.to_string(),
                        &h,
                    ])?;
                }
                w.write_record([m.as_str(), &label, "", "", "", &h])?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, self.path(q))?;
        Ok(())
    }

    /// Zero sets for modulus `q` certified at least to height `t`. Missing
    /// or too-short data is scanned when `scan_missing` is set, otherwise
    /// it is a dependency error.
    pub fn ensure(
        &self,
        q: u64,
        t: f64,
        scan_missing: bool,
    ) -> Result<(Vec<ZeroSet>, CacheStatus)> {
        if let Some(sets) = self.load(q)? {
            if sets.iter().all(|s| s.complete_to_height >= t) {
                return Ok((sets, CacheStatus::Cached));
            }
        }
        if !scan_missing {
            return Err(Error::Dependency(format!(
                "no cached zeros for modulus {q} to height {t} in {}",
                self.dir.display()
            )));
        }
        let sets = scan_primitive(q, t)?;
        self.store(q, &sets)?;
        Ok((sets, CacheStatus::Scanned))
    }
}

/// Zero sets for a range of moduli, gathered from a cache.
#[derive(Debug, Clone, Default)]
pub struct ZeroBank {
    sets: BTreeMap<u64, Vec<ZeroSet>>,
}

impl ZeroBank {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads (or scans) every modulus `1..=q_max`.
    pub fn gather(cache: &ZeroCache, q_max: u64, t: f64, scan_missing: bool) -> Result<Self> {
        let mut bank = Self::new();
        for q in 1..=q_max {
            let (sets, _) = cache.ensure(q, t, scan_missing)?;
            bank.insert(q, sets);
        }
        Ok(bank)
    }

    /// Scans every modulus `1..=q_max` without touching disk.
    pub fn scan(q_max: u64, t: f64) -> Result<Self> {
        let mut bank = Self::new();
        for q in 1..=q_max {
            bank.insert(q, scan_primitive(q, t)?);
        }
        Ok(bank)
    }

    pub fn insert(&mut self, q: u64, sets: Vec<ZeroSet>) {
        self.sets.insert(q, sets);
    }

    pub fn moduli(&self) -> impl Iterator<Item = u64> + '_ {
        self.sets.keys().copied()
    }

    /// Zero sets for the primitive characters of modulus `q`.
    pub fn primitive(&self, q: u64) -> Result<&[ZeroSet]> {
        self.sets
            .get(&q)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::Dependency(format!("no zero data for modulus {q}")))
    }

    /// Nontrivial zeros of `L(s, χ)` for any `χ`: those of the inducing
    /// primitive character.
    pub fn zeros_of(&self, chi: &DirichletCharacter) -> Result<&ZeroSet> {
        let prim = chi.primitive()?;
        self.primitive(prim.modulus())?
            .iter()
            .find(|z| z.character == prim)
            .ok_or_else(|| Error::Dependency(format!("no zero data for {prim}")))
    }

    /// Every zero set held, in modulus then character order.
    pub fn all(&self) -> impl Iterator<Item = &ZeroSet> {
        self.sets.values().flatten()
    }
}
