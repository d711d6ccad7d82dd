#include "smi/error.hpp"

namespace smi {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  if (issues.empty()) return "validation failed";
  std::string out = issues.front();
  for (std::size_t i = 1; i < issues.size(); ++i) out += "; " + issues[i];
  return out;
}

std::vector<std::string> degenerate_messages(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    out.push_back("indicator " + id + " is constant (max == min); cannot normalize");
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

DegenerateColumnError::DegenerateColumnError(std::vector<std::string> indicators)
    : ValidationError(degenerate_messages(indicators)), indicators_(std::move(indicators)) {}

}  // namespace smi
