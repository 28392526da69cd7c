//! Content-addressed object store.
//!
//! Layout under the root: `objects/<sha256>.json` holds the canonical
//! serialization of each object, `index.json` maps hashes to kinds and names
//! plus memoized results, and `.lock` carries the advisory lock.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use butterfly_core::serial::canonical;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::Usage;

pub struct Workspace {
    root: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub hash: String,
    pub kind: String,
    pub name: String,
}

#[derive(Default)]
struct Index {
    objects: BTreeMap<String, (String, String)>,
    cache: BTreeMap<String, String>,
}

impl Index {
    fn to_json(&self) -> Value {
        let objects: serde_json::Map<String, Value> = self
            .objects
            .iter()
            .map(|(h, (k, n))| (h.clone(), json!({"kind": k, "name": n})))
            .collect();
        json!({"objects": objects, "cache": self.cache})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut index = Index::default();
        if let Some(objs) = v.get("objects").and_then(Value::as_object) {
            for (h, e) in objs {
                let kind = e.get("kind").and_then(Value::as_str).unwrap_or("").to_string();
                let name = e.get("name").and_then(Value::as_str).unwrap_or("").to_string();
                index.objects.insert(h.clone(), (kind, name));
            }
        }
        if let Some(cache) = v.get("cache").and_then(Value::as_object) {
            for (k, h) in cache {
                index.cache.insert(k.clone(), h.as_str().context("cache entry is not a hash")?.to_string());
            }
        }
        Ok(index)
    }
}

fn display_name(v: &Value) -> String {
    let name = |x: &Value| x.get("name").and_then(Value::as_str).map(str::to_string);
    if let Some(n) = name(v) {
        return n;
    }
    match (v.get("dom").and_then(name), v.get("cod").and_then(name)) {
        (Some(d), Some(c)) => format!("{d} -> {c}"),
        _ => String::new(),
    }
}

pub fn hash_of(v: &Value) -> String {
    hex::encode(Sha256::digest(canonical(v).as_bytes()))
}

impl Workspace {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(root.join("objects")).with_context(|| format!("creating workspace {}", root.display()))?;
        Ok(Self { root })
    }

    fn object_path(&self, hash: &str) -> PathBuf {
        self.root.join("objects").join(format!("{hash}.json"))
    }

    fn lock(&self, exclusive: bool) -> Result<File> {
        let f = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.root.join(".lock"))
            .context("opening the workspace lock")?;
        if exclusive {
            f.lock()?;
        } else {
            f.lock_shared()?;
        }
        Ok(f)
    }

    fn read_index(&self) -> Result<Index> {
        let path = self.root.join("index.json");
        if !path.exists() {
            return Ok(Index::default());
        }
        let text = fs::read_to_string(&path)?;
        Index::from_json(&serde_json::from_str(&text).context("index.json is corrupt")?)
    }

    fn write_atomic(&self, path: &Path, text: &str) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Stores `v` under the hash of its canonical form and returns the hash.
    pub fn put(&self, v: &Value) -> Result<String> {
        let kind = v.get("kind").and_then(Value::as_str).context("object has no 'kind'")?;
        let name = display_name(v);
        let text = canonical(v);
        let hash = hash_of(v);
        let _guard = self.lock(true)?;
        let path = self.object_path(&hash);
        if !path.exists() {
            self.write_atomic(&path, &text)?;
        }
        let mut index = self.read_index()?;
        if index.objects.insert(hash.clone(), (kind.to_string(), name)).is_none() {
            self.write_atomic(&self.root.join("index.json"), &canonical(&index.to_json()))?;
        }
        Ok(hash)
    }

    /// The full hash for a hash or a unique prefix of at least 4 characters.
    pub fn resolve(&self, r: &str) -> Result<String> {
        let _guard = self.lock(false)?;
        let index = self.read_index()?;
        if index.objects.contains_key(r) {
            return Ok(r.to_string());
        }
        if r.len() < 4 || !r.chars().all(|c| c.is_ascii_hexdigit()) {
            bail!(Usage(format!("'{r}' is not a file or a stored ref")));
        }
        let hits: Vec<&String> = index.objects.keys().filter(|h| h.starts_with(r)).collect();
        match hits.as_slice() {
            [h] => Ok((*h).clone()),
            [] => bail!(Usage(format!("no stored object matches '{r}'"))),
            _ => bail!(Usage(format!("ref '{r}' is ambiguous ({} matches)", hits.len()))),
        }
    }

    /// The stored canonical text.
    pub fn get_text(&self, r: &str) -> Result<String> {
        let hash = self.resolve(r)?;
        let _guard = self.lock(false)?;
        fs::read_to_string(self.object_path(&hash)).with_context(|| format!("object {hash} is missing from the store"))
    }

    pub fn get(&self, r: &str) -> Result<Value> {
        Ok(serde_json::from_str(&self.get_text(r)?)?)
    }

    pub fn list(&self) -> Result<Vec<Entry>> {
        let _guard = self.lock(false)?;
        Ok(self
            .read_index()?
            .objects
            .into_iter()
            .map(|(hash, (kind, name))| Entry { hash, kind, name })
            .collect())
    }

    pub fn cached(&self, key: &str) -> Result<Option<Value>> {
        let hash = {
            let _guard = self.lock(false)?;
            self.read_index()?.cache.get(key).cloned()
        };
        match hash {
            Some(h) if self.object_path(&h).exists() => Ok(Some(self.get(&h)?)),
            _ => Ok(None),
        }
    }

    pub fn remember(&self, key: &str, v: &Value) -> Result<String> {
        let hash = self.put(v)?;
        let _guard = self.lock(true)?;
        let mut index = self.read_index()?;
        index.cache.insert(key.to_string(), hash.clone());
        self.write_atomic(&self.root.join("index.json"), &canonical(&index.to_json()))?;
        Ok(hash)
    }

    /// Replaces every `{"ref": hash}` node with the stored object.
    pub fn expand_refs(&self, v: Value) -> Result<Value> {
        Ok(match v {
            Value::Object(map) if map.len() == 1 && map.get("ref").is_some_and(Value::is_string) => {
                let r = map["ref"].as_str().unwrap();
                self.expand_refs(self.get(r)?)?
            }
            Value::Object(map) => Value::Object(
                map.into_iter()
                    .map(|(k, x)| Ok((k, self.expand_refs(x)?)))
                    .collect::<Result<_>>()?,
            ),
            Value::Array(xs) => Value::Array(xs.into_iter().map(|x| self.expand_refs(x)).collect::<Result<_>>()?),
            other => other,
        })
    }
}
