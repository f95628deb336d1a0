use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Model;
use crate::error::{Error, Result};

pub const BLOB_MAGIC: &[u8; 4] = b"BSM1";
const BLOB_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    model: Model,
}

/// `BSM1`, a little-endian u64 payload length, then the JSON payload.
pub fn model_to_bytes(model: &Model) -> Result<Vec<u8>> {
    let payload = serde_json::to_vec(&Envelope {
        version: BLOB_VERSION,
        model: model.clone(),
    })?;
    let mut out = Vec::with_capacity(12 + payload.len());
    out.extend_from_slice(BLOB_MAGIC);
    out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    out.extend_from_slice(&payload);
    Ok(out)
}

pub fn model_from_bytes(bytes: &[u8]) -> Result<Model> {
    if bytes.len() < 12 || &bytes[..4] != BLOB_MAGIC {
        return Err(Error::Blob("missing BSM1 header".into()));
    }
    let len = u64::from_le_bytes(bytes[4..12].try_into().expect("8 bytes")) as usize;
    if bytes.len() - 12 != len {
        return Err(Error::Blob(format!(
            "payload is {} bytes, header says {len}",
            bytes.len() - 12
        )));
    }
    let env: Envelope = serde_json::from_slice(&bytes[12..])?;
    if env.version != BLOB_VERSION {
        return Err(Error::Blob(format!("unsupported blob version {}", env.version)));
    }
    Ok(env.model)
}

impl Model {
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, model_to_bytes(self)?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Model> {
        let path = path.as_ref();
        model_from_bytes(&fs::read(path).map_err(|e| Error::io(path, e))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ml::{default_grid, testutil::blobs, train, ModelKind};

    #[test]
    fn every_kind_round_trips() {
        let d = blobs(15, 0.5, 6);
        for kind in ModelKind::ALL {
            let spec = default_grid(kind, 4)[0];
            let m = train(&spec, &d).unwrap();
            let bytes = model_to_bytes(&m).unwrap();
            assert_eq!(&bytes[..4], b"BSM1");
            let back = model_from_bytes(&bytes).unwrap();
            assert_eq!(back, m);
            assert_eq!(back.predict(&d.features).unwrap(), m.predict(&d.features).unwrap());
            assert_eq!(model_to_bytes(&back).unwrap(), bytes);
        }
    }

    #[test]
    fn rejects_corrupt_blobs() {
        assert!(model_from_bytes(b"XXXX").is_err());
        let d = blobs(5, 0.5, 6);
        let m = train(&default_grid(ModelKind::GaussianNb, 0)[0], &d).unwrap();
        let mut bytes = model_to_bytes(&m).unwrap();
        bytes.pop();
        assert!(matches!(model_from_bytes(&bytes), Err(Error::Blob(_))));
    }
}
