#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bv {

// Input outside a documented budget (e.g. exact discrepancy search too large).
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Operation not defined for the given representation (e.g. multiplying simple
// functions whose set intersection leaves the represented class).
class UnsupportedOperationError : public std::runtime_error {
 public:
  explicit UnsupportedOperationError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition failed; carries a human-readable witness.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, std::string witness)
      : std::runtime_error(what + (witness.empty() ? "" : " [witness: " + witness + "]")),
        witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// Registry lookup failure with nearby-name suggestions.
class NotFoundError : public std::runtime_error {
 public:
  NotFoundError(const std::string& what, std::vector<std::string> suggestions)
      : std::runtime_error(make_message(what, suggestions)),
        suggestions_(std::move(suggestions)) {}
  const std::vector<std::string>& suggestions() const { return suggestions_; }

 private:
  static std::string make_message(const std::string& what,
                                  const std::vector<std::string>& suggestions) {
    std::string msg = what;
    if (!suggestions.empty()) {
      msg += " (did you mean:";
      for (const auto& s : suggestions) msg += " " + s;
      msg += "?)";
    }
    return msg;
  }
  std::vector<std::string> suggestions_;
};

// A certified inequality (Koksma-Hlawka, algebra-norm submultiplicativity)
// failed its hard check. This signals a genuine bug, not bad input.
class CertifiedInequalityError : public std::logic_error {
 public:
  explicit CertifiedInequalityError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bv
