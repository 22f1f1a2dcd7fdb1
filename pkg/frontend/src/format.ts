// Display precision matching the text report: area 4 decimals,
// percent 2, Rf 3. Values themselves always come from the server.

export const fmtArea = (v: number): string => v.toFixed(4);
export const fmtPercent = (v: number): string => v.toFixed(2);
export const fmtRf = (v: number): string => v.toFixed(3);
