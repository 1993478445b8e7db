#pragma once

#include <stdexcept>
#include <string>

namespace svjmle {

// Base class for all domain errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires a specific mean-reversion regime (subcritical/critical).
class RegimeError : public Error {
public:
    explicit RegimeError(const std::string& what) : Error(what) {}
};

// Requested stationary moment E(Y^K) does not exist.
class MomentUndefined : public Error {
public:
    explicit MomentUndefined(const std::string& what) : Error(what) {}
};

// Second coordinate of G^-1 f (the kappa estimate) vanished; the
// reparameterization cannot be inverted.
class SingularSecondCoordinate : public Error {
public:
    explicit SingularSecondCoordinate(const std::string& what) : Error(what) {}
};

// Discretization scheme used outside its validity domain.
class SchemeDomainError : public Error {
public:
    explicit SchemeDomainError(const std::string& what) : Error(what) {}
};

// A path reduction met a non-positive variance or price value.
class NonpositivePath : public Error {
public:
    explicit NonpositivePath(const std::string& what) : Error(what) {}
};

// Sufficient statistics violate i1*i2 > T^2 (constant-path degeneracy);
// the information matrix is singular.
class DegenerateStats : public Error {
public:
    explicit DegenerateStats(const std::string& what) : Error(what) {}
};

// Malformed configuration file or overrides.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace svjmle
