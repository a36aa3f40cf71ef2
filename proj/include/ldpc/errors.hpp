#pragma once

#include <stdexcept>
#include <string>

namespace ldpc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// graph construction
class IndexOutOfRange : public Error { public: using Error::Error; };
class DuplicateEdge : public Error { public: using Error::Error; };
class EmptyGraph : public Error { public: using Error::Error; };
class IsolatedNode : public Error { public: using Error::Error; };

// degree distributions / rates
class ZeroDenominator : public Error { public: using Error::Error; };
class InvalidRate : public Error { public: using Error::Error; };
class InvalidDistribution : public Error { public: using Error::Error; };

// construction
class InfeasibleSpec : public Error { public: using Error::Error; };

// peeling / stopping-set search
class BudgetExceeded : public Error { public: using Error::Error; };

// optimization
class RateImpossible : public Error { public: using Error::Error; };

// reliability
class SingularSystem : public Error { public: using Error::Error; };
class InvalidStoppingIndex : public Error { public: using Error::Error; };

// front end
class ConfigError : public Error { public: using Error::Error; };
class MissingGraphFile : public Error { public: using Error::Error; };
class AlistParseError : public Error { public: using Error::Error; };

} // namespace ldpc
