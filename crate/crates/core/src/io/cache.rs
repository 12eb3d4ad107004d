//! Single-file store of interpolated Hall polynomials.
//!
//! The file carries a header (format version, quiver hash, prime list) and is
//! replaced atomically on save. Writers take a lock file next to the store;
//! readers never lock.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::hall::interp::{interpolate_hall_polynomial, HallPolynomial};
use crate::modfq::count::hall_number;
use crate::modfq::ModClass;
use crate::report::Report;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

pub const CACHE_VERSION: u32 = 1;
/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "IHALL_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub version: u32,
    pub quiver: String,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Record {
    x: Vec<u32>,
    z: Vec<u32>,
    y: Vec<u32>,
    #[serde(flatten)]
    poly: HallPolynomial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheFile {
    header: CacheHeader,
    records: Vec<Record>,
}

type Triple = (ModClass, ModClass, ModClass);

#[derive(Debug)]
pub struct CacheStore {
    path: PathBuf,
    pub header: CacheHeader,
    records: BTreeMap<Triple, HallPolynomial>,
    dirty: bool,
}

/// Lock file held for the duration of a write.
struct WriteLock(PathBuf);

impl WriteLock {
    fn acquire(store: &Path) -> Result<WriteLock> {
        let mut lock = store.as_os_str().to_owned();
        lock.push(".lock");
        let lock = PathBuf::from(lock);
        for _ in 0..100 {
            match fs::OpenOptions::new().write(true).create_new(true).open(&lock) {
                Ok(mut f) => {
                    let _ = writeln!(f, "{}", std::process::id());
                    return Ok(WriteLock(lock));
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => std::thread::sleep(Duration::from_millis(50)),
                Err(e) => return Err(e.into()),
            }
        }
        Err(Error::Io(format!("cache lock {} is held by another writer", lock.display())))
    }
}

impl Drop for WriteLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl CacheStore {
    /// Path from the environment, if set.
    pub fn env_path() -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from)
    }

    /// Opens or creates a store. An existing file must parse and carry the
    /// current version, the quiver's hash and the same primes.
    pub fn open(path: impl Into<PathBuf>, ctx: &Ctx, primes: &[u64]) -> Result<CacheStore> {
        let path = path.into();
        let header = CacheHeader { version: CACHE_VERSION, quiver: ctx.q.hash(), primes: primes.to_vec() };
        let mut store = CacheStore { path, header, records: BTreeMap::new(), dirty: false };
        let text = match fs::read_to_string(&store.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(store),
            Err(e) => return Err(e.into()),
        };
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::CacheRejected(format!("unreadable cache {}: {e}", store.path.display())))?;
        if file.header.version != CACHE_VERSION {
            return Err(Error::CacheRejected(format!("cache version {} (expected {CACHE_VERSION})", file.header.version)));
        }
        if file.header.quiver != store.header.quiver {
            return Err(Error::CacheRejected(format!("cache belongs to quiver {}", file.header.quiver)));
        }
        if file.header.primes != store.header.primes {
            return Err(Error::CacheRejected(format!("cache primes {:?} differ from {:?}", file.header.primes, primes)));
        }
        let nr = ctx.nroots();
        for r in file.records {
            if r.x.len() != nr || r.z.len() != nr || r.y.len() != nr {
                return Err(Error::CacheRejected("record has the wrong number of roots".into()));
            }
            store.records.insert((ModClass(r.x), ModClass(r.z), ModClass(r.y)), r.poly);
        }
        Ok(store)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, x: &ModClass, z: &ModClass, y: &ModClass) -> Option<&HallPolynomial> {
        self.records.get(&(x.clone(), z.clone(), y.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &HallPolynomial)> {
        self.records.iter()
    }

    /// `F^Y_{XZ}`, interpolated from counts on a miss.
    pub fn hall_poly(&mut self, ctx: &Ctx, x: &ModClass, z: &ModClass, y: &ModClass, budget: u64) -> Result<HallPolynomial> {
        if let Some(h) = self.get(x, z, y) {
            return Ok(h.clone());
        }
        let h = interpolate_hall_polynomial(ctx, x, z, y, &self.header.primes, budget)?;
        self.records.insert((x.clone(), z.clone(), y.clone()), h.clone());
        self.dirty = true;
        Ok(h)
    }

    /// Re-counts every record at `p` and rejects the store on any mismatch.
    pub fn spot_check(&self, ctx: &Ctx, p: u64, budget: u64) -> Result<()> {
        for ((x, z, y), h) in &self.records {
            let fresh = hall_number(ctx, x, z, y, p, budget)?;
            if h.poly.eval_i64(p as i64) != BigRational::from_integer(BigInt::from(fresh)) {
                return Err(Error::CacheRejected(format!("F^{y}_{{{x},{z}}} is {fresh} at {p}, cache says {}", h.poly)));
            }
        }
        Ok(())
    }

    /// Compares every record with fresh counts at primes not used to fit it.
    pub fn check_held_out(&self, ctx: &Ctx, primes: &[u64], budget: u64) -> Result<Report> {
        let mut rep = Report::new("cached Hall polynomials against fresh counts");
        for ((x, z, y), h) in &self.records {
            for &p in primes {
                if h.nodes.contains(&p) {
                    rep.push(format!("F^{y}_{{{x},{z}}} at {p}"), false, "prime was used for fitting");
                    continue;
                }
                let fresh = hall_number(ctx, x, z, y, p, budget)?;
                let val = h.poly.eval_i64(p as i64);
                rep.push(format!("F^{y}_{{{x},{z}}} at {p}"), val == BigRational::from_integer(BigInt::from(fresh)), format!("polynomial gives {val}, count {fresh}"));
            }
        }
        Ok(rep)
    }

    /// Writes the store if anything changed: new file, then rename over the old one.
    pub fn save(&mut self) -> Result<()> {
        if !self.dirty && self.path.exists() {
            return Ok(());
        }
        let _lock = WriteLock::acquire(&self.path)?;
        let file = CacheFile {
            header: self.header.clone(),
            records: self.records.iter().map(|((x, z, y), h)| Record { x: x.0.clone(), z: z.0.clone(), y: y.0.clone(), poly: h.clone() }).collect(),
        };
        let mut tmp = self.path.as_os_str().to_owned();
        tmp.push(format!(".tmp{}", std::process::id()));
        let tmp = PathBuf::from(tmp);
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&file)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &self.path)?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfq::count::DEFAULT_BUDGET;
    use crate::quiver::{IQuiver, RawQuiver};

    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

    fn a2() -> std::sync::Arc<Ctx> {
        Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()).unwrap()
    }

    #[test]
    fn save_reload_and_reject() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hall.json");
        let ctx = a2();
        let (s1, s2, m) = (ModClass(vec![1, 0, 0]), ModClass(vec![0, 1, 0]), ModClass(vec![0, 0, 1]));
        let mut st = CacheStore::open(&path, &ctx, &PRIMES).unwrap();
        let h = st.hall_poly(&ctx, &s1, &s2, &m, DEFAULT_BUDGET).unwrap();
        st.save().unwrap();
        let st2 = CacheStore::open(&path, &ctx, &PRIMES).unwrap();
        assert_eq!(st2.get(&s1, &s2, &m), Some(&h));
        st2.spot_check(&ctx, 2, DEFAULT_BUDGET).unwrap();
        assert!(!path.with_extension("json.lock").exists());

        // wrong primes, wrong quiver, bad version, corrupt file
        assert!(matches!(CacheStore::open(&path, &ctx, &PRIMES[..5]), Err(Error::CacheRejected(_))));
        let other = Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("2", "1")], &[])).unwrap()).unwrap();
        assert!(matches!(CacheStore::open(&path, &other, &PRIMES), Err(Error::CacheRejected(_))));
        let text = fs::read_to_string(&path).unwrap().replace("\"version\":1", "\"version\":99");
        fs::write(&path, text).unwrap();
        assert!(matches!(CacheStore::open(&path, &ctx, &PRIMES), Err(Error::CacheRejected(_))));
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(CacheStore::open(&path, &ctx, &PRIMES), Err(Error::CacheRejected(_))));
    }

    #[test]
    fn tampered_record_fails_spot_check() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hall.json");
        let ctx = a2();
        let (s1, s2, m) = (ModClass(vec![1, 0, 0]), ModClass(vec![0, 1, 0]), ModClass(vec![0, 0, 1]));
        let mut st = CacheStore::open(&path, &ctx, &PRIMES).unwrap();
        st.hall_poly(&ctx, &s1, &s2, &m, DEFAULT_BUDGET).unwrap();
        st.save().unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("[[0,\"1\"]]", "[[0,\"2\"]]");
        fs::write(&path, text).unwrap();
        let st = CacheStore::open(&path, &ctx, &PRIMES).unwrap();
        assert!(matches!(st.spot_check(&ctx, 3, DEFAULT_BUDGET), Err(Error::CacheRejected(_))));
    }
}
