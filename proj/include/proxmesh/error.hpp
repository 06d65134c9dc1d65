#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace proxmesh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Collinear triples, too few sites, zero-area boxes.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class DuplicateSiteError : public DegenerateInputError {
public:
    DuplicateSiteError(const std::string& what, std::vector<std::pair<int, int>> duplicates)
        : DegenerateInputError(what), duplicates_(std::move(duplicates)) {}

    // Pairs (first index, repeated index).
    const std::vector<std::pair<int, int>>& duplicates() const { return duplicates_; }

private:
    std::vector<std::pair<int, int>> duplicates_;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Operands of a relation belong to different meshes.
class MeshMismatchError : public Error {
public:
    using Error::Error;
};

// A triangle set violates the requested region mode.
class RegionModeError : public Error {
public:
    RegionModeError(const std::string& what, int first, int second)
        : Error(what), first_(first), second_(second) {}

    int first() const { return first_; }
    int second() const { return second_; }

private:
    int first_;
    int second_;
};

// The union of a region's triangles is not a simple polygon (hole or pinch vertex).
class RegionTopologyError : public Error {
public:
    using Error::Error;
};

} // namespace proxmesh
