#ifndef CQMS_ERROR_HPP
#define CQMS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cqms {

/// Base class of every error thrown by the library. The kind() tag lets the
/// command-line harness map failures to exit codes without string matching.
class Error : public std::runtime_error {
public:
    enum class Kind {
        table,
        metric,
        length,
        structural,
        not_a_quantum_group,
        completeness,
        schur,
        state_certification,
        internal_inconsistency,
        domain,
        unsupported,
        kernel,
        config,
        parse,
        certification,
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

inline const char* kind_name(Error::Kind k)
{
    switch (k) {
    case Error::Kind::table: return "table error";
    case Error::Kind::metric: return "metric error";
    case Error::Kind::length: return "length error";
    case Error::Kind::structural: return "structural error";
    case Error::Kind::not_a_quantum_group: return "not-a-quantum-group error";
    case Error::Kind::completeness: return "completeness error";
    case Error::Kind::schur: return "Schur error";
    case Error::Kind::state_certification: return "state-certification error";
    case Error::Kind::internal_inconsistency: return "internal inconsistency";
    case Error::Kind::domain: return "domain error";
    case Error::Kind::unsupported: return "unsupported";
    case Error::Kind::kernel: return "kernel error";
    case Error::Kind::config: return "config error";
    case Error::Kind::parse: return "parse error";
    case Error::Kind::certification: return "certification failure";
    }
    return "error";
}

[[noreturn]] inline void fail(Error::Kind kind, const std::string& msg)
{
    throw Error(kind, std::string(kind_name(kind)) + ": " + msg);
}

} // namespace cqms

#endif
