#ifndef CXG_ERRORS_H_
#define CXG_ERRORS_H_

#include <exception>
#include <string>

namespace cxg {

// Base class for all engine errors. kind() is a stable machine-readable tag
// used in structured CLI error output.
class Error : public std::exception {
 public:
  Error(std::string kind, std::string message)
      : kind_(std::move(kind)), message_(std::move(message)) {}

  const char *what() const noexcept override { return message_.c_str(); }
  const std::string &kind() const { return kind_; }
  const std::string &context() const { return context_; }

  // Prefixes the message with a location such as "corpus.jsonl:12". The
  // exception keeps its dynamic type, so callers can add context and
  // rethrow with `throw;`.
  void AddContext(const std::string &where) {
    context_ = context_.empty() ? where : where + ": " + context_;
    message_ = where + ": " + message_;
  }

 private:
  std::string kind_;
  std::string message_;
  std::string context_;
};

#define CXG_DEFINE_ERROR(Name)                                               \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(std::string message) : Error(#Name, std::move(message)) {} \
  };

CXG_DEFINE_ERROR(SchemaError)
CXG_DEFINE_ERROR(TreeError)
CXG_DEFINE_ERROR(UnknownCategory)
CXG_DEFINE_ERROR(DegenerateNesting)
CXG_DEFINE_ERROR(MisalignedCorpora)
CXG_DEFINE_ERROR(EmptyGroup)
CXG_DEFINE_ERROR(VersionMismatch)
CXG_DEFINE_ERROR(CorruptFile)
CXG_DEFINE_ERROR(IoError)

#undef CXG_DEFINE_ERROR

}  // namespace cxg

#endif  // CXG_ERRORS_H_
