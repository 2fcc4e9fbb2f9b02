//! Binary checkpoint of one agent: network configuration, parameters and
//! Adam state. All integers and floats are little-endian.
//!
//! ```text
//! offset  size  field
//! 0       8     magic "RVWAGENT"
//! 8       4     u32 format version (1)
//! 12      1     u8 scalar width in bytes (4 = f32, 8 = f64)
//! 13      4     u32 input dim (1)
//! 17      4     u32 hidden width
//! 21      4     u32 residual blocks
//! 25      4     u32 output dim (3)
//! 29      1     u8 activation (0 = relu, 1 = tanh)
//! 30      8     u64 init seed
//! 38      8     u64 parameter count P
//! 46      8     u64 Adam step count
//! 54      32    f64 lr, beta1, beta2, epsilon
//! 86      P*w   parameters
//!         P*w   Adam first moments
//!         P*w   Adam second moments
//! ```
//!
//! Each parameter block is laid out layer by layer (input layer, then the
//! two affine maps of each residual block, then the output layer); within a
//! layer the row-major weight table precedes the bias vector.

use std::fs;
use std::path::Path;

use super::adam::{AdamConfig, AdamState};
use super::network::{Activation, NetworkConfig, Params, PolicyNetwork, INPUT_DIM, OUTPUT_DIM};
use super::real::Real;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"RVWAGENT";
pub const VERSION: u32 = 1;

pub fn encode<T: Real>(net: &PolicyNetwork<T>, state: &AdamState<T>) -> Vec<u8> {
    let c = net.config();
    let count = net.param_count();
    let mut out = Vec::with_capacity(86 + 3 * count * T::BYTES);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(T::BYTES as u8);
    for dim in [INPUT_DIM, c.hidden_width, c.residual_blocks, OUTPUT_DIM] {
        out.extend_from_slice(&(dim as u32).to_le_bytes());
    }
    out.push(c.activation.code());
    out.extend_from_slice(&c.init_seed.to_le_bytes());
    out.extend_from_slice(&(count as u64).to_le_bytes());
    out.extend_from_slice(&state.step_count().to_le_bytes());
    let a = state.config();
    for v in [a.lr, a.beta1, a.beta2, a.epsilon] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for params in [net.params(), state.first_moment(), state.second_moment()] {
        params.values().for_each(|v| v.write_le(&mut out));
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Checkpoint(format!("truncated at byte {}", self.pos)))?;
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

pub fn decode<T: Real>(bytes: &[u8]) -> Result<(PolicyNetwork<T>, AdamState<T>)> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err(Error::Checkpoint("bad magic".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {version}")));
    }
    let width = r.u8()? as usize;
    if width != T::BYTES {
        return Err(Error::Checkpoint(format!("file stores {width}-byte scalars, expected {} ({})", T::BYTES, T::NAME)));
    }
    let input = r.u32()? as usize;
    let hidden_width = r.u32()? as usize;
    let residual_blocks = r.u32()? as usize;
    let output = r.u32()? as usize;
    if input != INPUT_DIM || output != OUTPUT_DIM {
        return Err(Error::Checkpoint(format!("unsupported input/output dims {input}/{output}")));
    }
    let activation = Activation::from_code(r.u8()?).ok_or_else(|| Error::Checkpoint("unknown activation".into()))?;
    let init_seed = r.u64()?;
    let config = NetworkConfig { hidden_width, residual_blocks, activation, init_seed };
    config.validate()?;
    let count = r.u64()? as usize;
    if count != config.param_count() {
        return Err(Error::Checkpoint(format!("parameter count {count} does not match configuration")));
    }
    let step_count = r.u64()?;
    let adam = AdamConfig { lr: r.f64()?, beta1: r.f64()?, beta2: r.f64()?, epsilon: r.f64()? };

    let mut read_params = || -> Result<Params<T>> {
        let mut params = Params::zeros(&config);
        let raw = r.take(count * T::BYTES)?;
        for (v, chunk) in params.values_mut().zip(raw.chunks_exact(T::BYTES)) {
            *v = T::read_le(chunk);
        }
        Ok(params)
    };
    let params = read_params()?;
    let first = read_params()?;
    let second = read_params()?;
    if r.pos != bytes.len() {
        return Err(Error::Checkpoint(format!("{} trailing bytes", bytes.len() - r.pos)));
    }
    let net = PolicyNetwork::from_params(config, params)?;
    let state = AdamState::from_parts(adam, step_count, first, second)?;
    Ok((net, state))
}

pub fn save<T: Real>(path: &Path, net: &PolicyNetwork<T>, state: &AdamState<T>) -> std::io::Result<()> {
    fs::write(path, encode(net, state))
}

pub fn load<T: Real>(path: &Path) -> Result<(PolicyNetwork<T>, AdamState<T>)> {
    let bytes = fs::read(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    decode(&bytes)
}
