#pragma once

#include "fuzzydl/concept.hpp"
#include "fuzzydl/degree.hpp"
#include "fuzzydl/errors.hpp"
#include "fuzzydl/knowledge_base.hpp"
#include "fuzzydl/oracle.hpp"
#include "fuzzydl/parser.hpp"
#include "fuzzydl/reasoner.hpp"
#include "fuzzydl/semantics.hpp"
#include "fuzzydl/tableau.hpp"
#include "fuzzydl/terminology.hpp"
