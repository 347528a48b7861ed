#pragma once

#include "ssred/breuil.hpp"
#include "ssred/descent.hpp"
#include "ssred/epoly.hpp"
#include "ssred/errors.hpp"
#include "ssred/filtmod.hpp"
#include "ssred/halfint.hpp"
#include "ssred/kisin.hpp"
#include "ssred/mat2.hpp"
#include "ssred/padic.hpp"
#include "ssred/pipeline.hpp"
#include "ssred/reduction.hpp"
#include "ssred/report.hpp"
#include "ssred/series.hpp"
#include "ssred/verdict.hpp"
