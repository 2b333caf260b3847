use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::FreeError;
use crate::core::{BoolMat, Perm, Symbol};
use crate::network::{Network, TargetProp};

struct Inner {
    code: Vec<u8>,
    rep: Network,
    tr: BoolMat,
}

/// An isomorphism class of networks, held by its canonical representative.
///
/// Equality, ordering and hashing go through the canonical code, so two
/// classes compare equal exactly when their networks are isomorphic.
#[derive(Clone)]
pub struct NetClass(Arc<Inner>);

impl NetClass {
    /// Class of `net`.
    pub fn of(net: &Network) -> NetClass {
        let canon = net.canonical();
        let tr = canon.network.transference();
        NetClass(Arc::new(Inner {
            code: canon.code,
            rep: canon.network,
            tr,
        }))
    }

    pub fn phi(p: &Perm) -> NetClass {
        NetClass::of(&Network::perm(p))
    }

    pub fn identity(n: usize) -> NetClass {
        NetClass::phi(&Perm::same(n))
    }

    pub fn generator(sym: &Symbol) -> NetClass {
        NetClass::of(&Network::generator(sym))
    }

    /// Canonical representative: vertices `2..`, edges `0..`.
    pub fn rep(&self) -> &Network {
        &self.0.rep
    }

    pub fn code(&self) -> &[u8] {
        &self.0.code
    }

    /// Lower-case hex of the code.
    pub fn code_hex(&self) -> String {
        self.0.code.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Short stable name: the hex code when short, else a 64-bit FNV-1a digest.
    pub fn short_code(&self) -> String {
        if self.0.code.len() <= 16 {
            return self.code_hex();
        }
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &b in &self.0.code {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("#{h:016x}")
    }

    /// Cached transference of the representative.
    pub fn tr(&self) -> &BoolMat {
        &self.0.tr
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.rep.shape()
    }

    pub fn coarity(&self) -> usize {
        self.0.rep.coarity()
    }

    pub fn arity(&self) -> usize {
        self.0.rep.arity()
    }

    pub fn inner_count(&self) -> usize {
        self.0.rep.inner_count()
    }

    /// Membership in the filtration piece of type `q`: `Tr ≤ q`.
    pub fn within(&self, q: &BoolMat) -> bool {
        self.tr().shape() == q.shape() && self.tr().le(q)
    }

    pub fn compose(&self, other: &NetClass) -> Result<NetClass, FreeError> {
        let g = self.rep().compose(other.rep()).map_err(|e| FreeError::Shape(e.to_string()))?;
        Ok(NetClass::of(&g))
    }

    pub fn tensor(&self, other: &NetClass) -> NetClass {
        NetClass::of(&self.rep().tensor(other.rep()))
    }

    /// `σ·a·τ`.
    pub fn act(&self, sigma: &Perm, tau: &Perm) -> Result<NetClass, FreeError> {
        let g = self.rep().act(sigma, tau).map_err(|e| FreeError::Shape(e.to_string()))?;
        Ok(NetClass::of(&g))
    }
}

impl PartialEq for NetClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.code == other.0.code
    }
}

impl Eq for NetClass {}

impl Hash for NetClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.code.hash(state);
    }
}

impl PartialOrd for NetClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NetClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.code.cmp(&other.0.code)
    }
}

impl fmt::Debug for NetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NetClass({:?})", self.0.rep)
    }
}

/// The free PROP on the symbols: classes under gluing and juxtaposition.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeProp;

impl TargetProp for FreeProp {
    type Elem = NetClass;

    fn shape(&self, a: &NetClass) -> (usize, usize) {
        a.shape()
    }

    fn compose(&self, a: &NetClass, b: &NetClass) -> NetClass {
        NetClass::compose(a, b).expect("checked shapes")
    }

    fn tensor(&self, a: &NetClass, b: &NetClass) -> NetClass {
        NetClass::tensor(a, b)
    }

    fn phi(&self, p: &Perm) -> NetClass {
        NetClass::phi(p)
    }
}
