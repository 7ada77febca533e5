#pragma once

#include "ainf/fixtures.hpp"

namespace fixtures = ainf::fixtures;
