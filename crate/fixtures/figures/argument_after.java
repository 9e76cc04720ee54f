import java.nio.file.Path;

public class FileUtils {

    public static void checkDirectoryTraversal(Path parentPath, Path pathToCheck) {
        Path normalizedParentPath = parentPath.normalize();
        if (pathToCheck.startsWith(normalizedParentPath)) {
            return;
        }
        throw new ForbiddenException("Directory traversal detected");
    }
}
