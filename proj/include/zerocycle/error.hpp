#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zc {

enum class ErrorKind {
	InvalidInput,
	InvalidBase,
	OutOfRange,
	NumericFailure,
	DegenerateGeometry,
	NotTransitive,
	CapExceeded,
	UnsupportedFactor,
	ShapeError,
	NoSolution,
	NonConstantBalanced,
	HypothesisViolated,
};

inline std::string_view to_string(ErrorKind kind)
{
	switch (kind)
	{
	case ErrorKind::InvalidInput: return "InvalidInput";
	case ErrorKind::InvalidBase: return "InvalidBase";
	case ErrorKind::OutOfRange: return "OutOfRange";
	case ErrorKind::NumericFailure: return "NumericFailure";
	case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
	case ErrorKind::NotTransitive: return "NotTransitive";
	case ErrorKind::CapExceeded: return "CapExceeded";
	case ErrorKind::UnsupportedFactor: return "UnsupportedFactor";
	case ErrorKind::ShapeError: return "ShapeError";
	case ErrorKind::NoSolution: return "NoSolution";
	case ErrorKind::NonConstantBalanced: return "NonConstantBalanced";
	case ErrorKind::HypothesisViolated: return "HypothesisViolated";
	}
	return "Unknown";
}

/** Every failure raised by the library carries one of the kinds above. */
class Error : public std::runtime_error
{
  public:
	Error(ErrorKind kind, const std::string &what)
	    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
	      kind_(kind), message_(what)
	{}

	ErrorKind kind() const noexcept { return kind_; }
	/** Text without the kind prefix. */
	const std::string &message() const noexcept { return message_; }

  private:
	ErrorKind kind_;
	std::string message_;
};

} // namespace zc
