#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moodrec {

/// Base class for all moodrec errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FileNotFoundError : public Error {
public:
    explicit FileNotFoundError(const std::string& path)
        : Error("file not found: " + path), path_(path) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Malformed input row. Rows are numbered from 1, header excluded.
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& detail)
        : Error("row " + std::to_string(row) + ": " + detail), row_(row) {}

    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

/// Input file header/structure does not match the catalog schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

class MissingFieldError : public Error {
public:
    explicit MissingFieldError(const std::string& field)
        : Error("missing field: " + field), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class TypeError : public Error {
public:
    explicit TypeError(const std::string& field)
        : Error("field '" + field + "' has the wrong type"), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class RangeError : public Error {
public:
    RangeError(const std::string& field, const std::string& value)
        : Error("field '" + field + "' out of range: '" + value + "'"),
          field_(field),
          value_(value) {}

    const std::string& field() const { return field_; }
    const std::string& value() const { return value_; }

private:
    std::string field_;
    std::string value_;
};

class DuplicateIdError : public Error {
public:
    explicit DuplicateIdError(const std::string& id)
        : Error("duplicate track id: " + id), id_(id) {}

    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class EmptyCatalogError : public Error {
public:
    EmptyCatalogError() : Error("catalog is empty") {}
};

class EmptySeedListError : public Error {
public:
    EmptySeedListError() : Error("seed list is empty") {}
};

class SeedNotFoundError : public Error {
public:
    explicit SeedNotFoundError(const std::string& id)
        : Error("seed track not found: " + id), id_(id) {}

    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class UnknownIdError : public Error {
public:
    explicit UnknownIdError(const std::string& id)
        : Error("unknown track id: " + id), id_(id) {}

    const std::string& id() const { return id_; }

private:
    std::string id_;
};

/// The candidate pool came up empty; `stage` names the filter that drained it.
class NoCandidatesError : public Error {
public:
    explicit NoCandidatesError(const std::string& stage)
        : Error("no candidates left after " + stage), stage_(stage) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

class DegenerateWeightsError : public Error {
public:
    DegenerateWeightsError() : Error("all six feature weights are zero") {}
};

class InvalidRatingError : public Error {
public:
    explicit InvalidRatingError(int rating)
        : Error("rating " + std::to_string(rating) + " outside the 1-5 scale"),
          rating_(rating) {}

    int rating() const { return rating_; }

private:
    int rating_;
};

class StoreIOError : public Error {
public:
    using Error::Error;
};

}  // namespace moodrec
