#pragma once

#include <stdexcept>
#include <string>

namespace tdm3d {

struct NonPositiveDistance : std::invalid_argument {
    explicit NonPositiveDistance(const std::string& what)
        : std::invalid_argument("non-positive distance: " + what) {}
};

struct EmptyGrid : std::invalid_argument {
    EmptyGrid() : std::invalid_argument("sample grid is empty") {}
};

struct ZeroIntendedSignal : std::runtime_error {
    ZeroIntendedSignal() : std::runtime_error("intended signal integrates to zero in window") {}
};

struct BadViewCount : std::invalid_argument {
    explicit BadViewCount(const std::string& what)
        : std::invalid_argument("bad view count: " + what) {}
};

struct EmptyMaskList : std::invalid_argument {
    EmptyMaskList() : std::invalid_argument("mask list is empty") {}
};

struct MaskLengthMismatch : std::invalid_argument {
    explicit MaskLengthMismatch(const std::string& what)
        : std::invalid_argument("mask length mismatch: " + what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what)
        : std::invalid_argument("dimension mismatch: " + what) {}
};

struct FrameCountMismatch : std::invalid_argument {
    explicit FrameCountMismatch(const std::string& what)
        : std::invalid_argument("frame count mismatch: " + what) {}
};

struct EmptyRange : std::invalid_argument {
    EmptyRange() : std::invalid_argument("sweep range is empty") {}
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& message)
        : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + message),
          line(line_) {}
};

struct ValidationError : std::runtime_error {
    std::string field;
    ValidationError(std::string field_, const std::string& reason)
        : std::runtime_error("invalid " + field_ + ": " + reason), field(std::move(field_)) {}
};

}  // namespace tdm3d
