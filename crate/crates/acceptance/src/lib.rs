//! Holds the `acceptance` test target; see `tests/acceptance.rs`. Kept as its own
//! package so that it runs after the library and CLI tests.
