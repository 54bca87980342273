"""Decision procedures for almost free algebras: quotients of the ground term algebra by
finitely many ground equations."""

__version__ = "0.1.0"
