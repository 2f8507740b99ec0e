//! On-disk cache of Weyl orbits, keyed by type and seed.
//!
//! Plain text, one file per key:
//!
//! ```text
//! principal-basis orbit cache v1
//! type D4
//! seed 1 0 0 0
//! size 8
//! -1 0 0 0
//! ...
//! ```
//!
//! A file that fails to parse or does not match its key is ignored and
//! rewritten; write failures are swallowed. Results never depend on the
//! cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::linalg::{WeightVec, Q};
use crate::rootsys::RootSystem;

pub const CACHE_DIR_ENV: &str = "PRINCIPAL_BASIS_CACHE_DIR";
const HEADER: &str = "principal-basis orbit cache v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCache {
    dir: PathBuf,
}

impl OrbitCache {
    pub fn new(dir: impl Into<PathBuf>) -> OrbitCache {
        OrbitCache { dir: dir.into() }
    }

    /// `$PRINCIPAL_BASIS_CACHE_DIR`, else `<user cache dir>/principal-basis/orbits`.
    pub fn from_env() -> Result<OrbitCache> {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            return Ok(OrbitCache::new(dir));
        }
        let base = dirs::cache_dir().ok_or_else(|| Error::Cache("no user cache directory".into()))?;
        Ok(OrbitCache::new(base.join("principal-basis").join("orbits")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, rs: &RootSystem, seed: &WeightVec) -> PathBuf {
        let key: Vec<String> = seed.coords().iter().map(|c| c.to_string().replace('/', "o")).collect();
        self.dir.join(format!("{}_{}.orbit", rs.lie_type(), key.join("_")))
    }

    /// Cached orbit of `seed`, computing and storing it on a miss.
    pub fn orbit(&self, rs: &RootSystem, seed: &WeightVec, cap: usize) -> Result<Vec<WeightVec>> {
        let path = self.path_for(rs, seed);
        if let Some(orbit) = fs::read_to_string(&path).ok().and_then(|s| parse(&s, rs, seed)) {
            if orbit.len() <= cap {
                return Ok(orbit);
            }
            return Err(Error::OrbitCapExceeded { cap });
        }
        let orbit = rs.weyl_orbit(seed, cap)?;
        let _ = self.store(&path, rs, seed, &orbit);
        Ok(orbit)
    }

    fn store(&self, path: &Path, rs: &RootSystem, seed: &WeightVec, orbit: &[WeightVec]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{HEADER}")?;
            writeln!(f, "type {}", rs.lie_type())?;
            writeln!(f, "seed {}", render(seed))?;
            writeln!(f, "size {}", orbit.len())?;
            for v in orbit {
                writeln!(f, "{}", render(v))?;
            }
        }
        fs::rename(tmp, path)
    }
}

fn render(v: &WeightVec) -> String {
    v.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_vec(line: &str, dim: usize) -> Option<WeightVec> {
    let coords: Vec<Q> = line.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    (coords.len() == dim).then(|| WeightVec::new(coords))
}

fn parse(text: &str, rs: &RootSystem, seed: &WeightVec) -> Option<Vec<WeightVec>> {
    let mut lines = text.lines();
    if lines.next()? != HEADER {
        return None;
    }
    if lines.next()?.strip_prefix("type ")? != rs.lie_type().to_string() {
        return None;
    }
    if parse_vec(lines.next()?.strip_prefix("seed ")?, rs.ambient_dim())? != *seed {
        return None;
    }
    let size: usize = lines.next()?.strip_prefix("size ")?.parse().ok()?;
    let orbit: Vec<WeightVec> = lines.map(|l| parse_vec(l, rs.ambient_dim())).collect::<Option<_>>()?;
    (orbit.len() == size).then_some(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, DEFAULT_ORBIT_CAP};

    fn temp_dir(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("pb-cache-{tag}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn round_trip_and_hit() {
        let dir = temp_dir("rt");
        let cache = OrbitCache::new(&dir);
        let rs = build_root_system("B3".parse().unwrap());
        let seed = rs.fundamental_weights()[2].clone();
        let first = cache.orbit(&rs, &seed, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(first, rs.weyl_orbit(&seed, DEFAULT_ORBIT_CAP).unwrap());
        let path = cache.path_for(&rs, &seed);
        assert!(path.exists());
        assert_eq!(cache.orbit(&rs, &seed, DEFAULT_ORBIT_CAP).unwrap(), first);
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn corrupt_file_is_ignored() {
        let dir = temp_dir("corrupt");
        let cache = OrbitCache::new(&dir);
        let rs = build_root_system("A2".parse().unwrap());
        let seed = rs.rho().clone();
        fs::create_dir_all(&dir).unwrap();
        fs::write(cache.path_for(&rs, &seed), "principal-basis orbit cache v1\ntype A2\ngarbage").unwrap();
        assert_eq!(cache.orbit(&rs, &seed, DEFAULT_ORBIT_CAP).unwrap().len(), 6);
        let _ = fs::remove_dir_all(&dir);
    }
}
