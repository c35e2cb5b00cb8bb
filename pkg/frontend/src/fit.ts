export interface FitResult {
  slope: number;
  intercept: number;
  r2: number;
}

/** Ordinary least squares a*x + b with the coefficient of determination. */
export function linearFit(xs: number[], ys: number[]): FitResult {
  const n = xs.length;
  if (n !== ys.length || n < 2) throw new Error("need at least two aligned points");
  const xMean = xs.reduce((a, b) => a + b, 0) / n;
  const yMean = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    sxx += (xs[i]! - xMean) ** 2;
    sxy += (xs[i]! - xMean) * (ys[i]! - yMean);
  }
  if (sxx === 0) throw new Error("x values are all identical");
  const slope = sxy / sxx;
  const intercept = yMean - slope * xMean;
  let ssRes = 0;
  let ssTot = 0;
  for (let i = 0; i < n; i++) {
    ssRes += (ys[i]! - (slope * xs[i]! + intercept)) ** 2;
    ssTot += (ys[i]! - yMean) ** 2;
  }
  const r2 = ssTot === 0 ? 1 : 1 - ssRes / ssTot;
  return { slope, intercept, r2 };
}
