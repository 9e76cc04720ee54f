public class FileUtils {

    public static void checkDirectoryTraversal(Path parentPath, Path pathToCheck) {
        Assert.notNull(parentPath, "Parent path must not be null");
        Assert.notNull(pathToCheck, "Path to check must not be null");
        if (pathToCheck.startsWith(parentPath)) {
            return;
        }
        throw new ForbiddenException("Directory traversal detected: " + pathToCheck.toString());
    }
}
